//! Stabilizer-tableau simulation of graph states, used to check that plans
//! really transform one graph state into another.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexId};
use crate::ops::{measure, x_partner, Basis, Move, TransformationPlan};
use serde::Serialize;

pub const DEFAULT_QUBIT_CAP: usize = 16;

/// Hermitian Pauli operator `±X^x Z^z` with `(1,1)` meaning Y on that qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pauli {
    pub x: u32,
    pub z: u32,
    pub neg: bool,
}

impl Pauli {
    pub fn identity() -> Self {
        Pauli { x: 0, z: 0, neg: false }
    }

    pub fn single(q: usize, basis: Basis) -> Self {
        let b = 1u32 << q;
        match basis {
            Basis::X => Pauli { x: b, z: 0, neg: false },
            Basis::Y => Pauli { x: b, z: b, neg: false },
            Basis::Z => Pauli { x: 0, z: b, neg: false },
        }
    }

    pub fn commutes(&self, o: &Pauli) -> bool {
        ((self.x & o.z).count_ones() + (self.z & o.x).count_ones()) % 2 == 0
    }

    /// Product `self · o`; both must commute so the result is Hermitian.
    pub fn mul(&self, o: &Pauli) -> Pauli {
        // exponent of i picked up when multiplying single-qubit factors
        let mut e: i32 = 2 * (self.neg as i32 + o.neg as i32);
        for q in 0..32 {
            let bit = |m: u32| (m >> q & 1) as i32;
            let (x1, z1, x2, z2) = (bit(self.x), bit(self.z), bit(o.x), bit(o.z));
            e += match (x1, z1) {
                (0, 0) => 0,
                (1, 1) => z2 - x2,
                (1, 0) => z2 * (2 * x2 - 1),
                _ => x2 * (1 - 2 * z2),
            };
        }
        debug_assert!(e.rem_euclid(2) == 0, "product of anticommuting Paulis");
        Pauli { x: self.x ^ o.x, z: self.z ^ o.z, neg: e.rem_euclid(4) == 2 }
    }
}

/// Aaronson–Gottesman tableau: rows `0..n` are destabilizers, `n..2n`
/// stabilizer generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    labels: Vec<VertexId>,
    rows: Vec<Pauli>,
}

impl StabilizerTableau {
    /// `|0…0⟩` on the given qubits.
    pub fn zeros(labels: Vec<VertexId>) -> Result<Self> {
        let n = labels.len();
        if n > 32 {
            return Err(Error::SizeCapExceeded { size: n, cap: 32 });
        }
        let mut rows = Vec::with_capacity(2 * n);
        for q in 0..n {
            rows.push(Pauli::single(q, Basis::X));
        }
        for q in 0..n {
            rows.push(Pauli::single(q, Basis::Z));
        }
        Ok(StabilizerTableau { labels, rows })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn qubit(&self, v: &VertexId) -> Result<usize> {
        self.labels.binary_search(v).map_err(|_| Error::UnknownVertex(v.clone()))
    }

    pub fn stabilizers(&self) -> &[Pauli] {
        &self.rows[self.n()..]
    }

    fn each_row(&mut self, f: impl Fn(&mut Pauli)) {
        self.rows.iter_mut().for_each(f);
    }

    pub fn h(&mut self, q: usize) {
        self.each_row(|p| {
            let (x, z) = (p.x >> q & 1, p.z >> q & 1);
            p.neg ^= x & z == 1;
            p.x = p.x & !(1 << q) | z << q;
            p.z = p.z & !(1 << q) | x << q;
        });
    }

    pub fn s(&mut self, q: usize) {
        self.each_row(|p| {
            p.neg ^= (p.x & p.z) >> q & 1 == 1;
            p.z ^= p.x & (1 << q);
        });
    }

    pub fn sdg(&mut self, q: usize) {
        self.s(q);
        self.z(q);
    }

    pub fn x(&mut self, q: usize) {
        self.each_row(|p| p.neg ^= p.z >> q & 1 == 1);
    }

    pub fn z(&mut self, q: usize) {
        self.each_row(|p| p.neg ^= p.x >> q & 1 == 1);
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        // CZ = H_b CNOT_ab H_b
        self.h(b);
        self.cnot(a, b);
        self.h(b);
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        self.each_row(|p| {
            let (xc, zc, xt, zt) = (p.x >> c & 1, p.z >> c & 1, p.x >> t & 1, p.z >> t & 1);
            p.neg ^= xc & zt & (xt ^ zc ^ 1) == 1;
            p.x ^= xc << t;
            p.z ^= zt << c;
        });
    }

    /// Measures Z on qubit `q`. A random outcome is forced to `outcome`
    /// (`true` meaning −1); a deterministic one must match it.
    fn measure_z(&mut self, q: usize, outcome: bool) -> Result<bool> {
        let n = self.n();
        let bit = 1u32 << q;
        if let Some(p) = (n..2 * n).find(|&i| self.rows[i].x & bit != 0) {
            let pivot = self.rows[p];
            // the destabilizer paired with p is overwritten below
            for i in 0..2 * n {
                if i != p && i != p - n && self.rows[i].x & bit != 0 {
                    self.rows[i] = self.rows[i].mul(&pivot);
                }
            }
            self.rows[p - n] = pivot;
            self.rows[p] = Pauli { x: 0, z: bit, neg: outcome };
            return Ok(false);
        }
        let got = self.sign_of(&Pauli::single(q, Basis::Z)).ok_or_else(|| Error::Internal("Z not in group".into()))?;
        if got != outcome {
            return Err(Error::InvalidOutcome(format!("qubit {} is deterministic with the other outcome", self.labels[q])));
        }
        Ok(true)
    }

    /// Projects onto the `(-1)^outcome` eigenspace of the Pauli at `v`.
    /// Returns whether the outcome was determined by the state.
    pub fn measure_pauli(&mut self, basis: Basis, v: &VertexId, outcome: bool) -> Result<bool> {
        let q = self.qubit(v)?;
        match basis {
            Basis::Z => self.measure_z(q, outcome),
            Basis::X => {
                self.h(q);
                let d = self.measure_z(q, outcome);
                self.h(q);
                d
            }
            Basis::Y => {
                self.sdg(q);
                self.h(q);
                let d = self.measure_z(q, outcome);
                self.h(q);
                self.s(q);
                d
            }
        }
    }

    /// Sign with which `p` (ignoring its own sign) lies in the stabilizer
    /// group, `None` if neither `p` nor `-p` does.
    pub fn sign_of(&self, p: &Pauli) -> Option<bool> {
        let n = self.n();
        let mut acc = Pauli::identity();
        for i in 0..n {
            if !self.rows[i].commutes(p) {
                acc = acc.mul(&self.rows[i + n]);
            }
        }
        (acc.x == p.x && acc.z == p.z && self.stabilizers().iter().all(|s| s.commutes(p))).then_some(acc.neg ^ p.neg)
    }

    /// Graph-state generator `X_v Z_{N(v)}` on this tableau's qubits.
    pub fn graph_generator(&self, g: &LabeledGraph, v: &VertexId) -> Result<Pauli> {
        let mut p = Pauli::single(self.qubit(v)?, Basis::X);
        for u in g.neighbors(v)? {
            p.z |= 1 << self.qubit(&u)?;
        }
        Ok(p)
    }

    /// Whether the state is exactly `|g⟩` on `g`'s vertices, tensored with
    /// anything on the other qubits.
    pub fn holds_graph_state(&self, g: &LabeledGraph) -> Result<bool> {
        for v in g.vertices() {
            if self.sign_of(&self.graph_generator(g, v)?) != Some(false) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The graph `g` with `self == |g⟩` exactly, if the state is one:
    /// eliminate the generators to `X`-diagonal form and read the `Z` part.
    pub fn to_graph(&self) -> Option<LabeledGraph> {
        let n = self.n();
        let mut rows: Vec<Pauli> = self.stabilizers().to_vec();
        for q in 0..n {
            let p = (q..n).find(|&i| rows[i].x >> q & 1 == 1)?;
            rows.swap(q, p);
            let pivot = rows[q];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != q && r.x >> q & 1 == 1 {
                    *r = r.mul(&pivot);
                }
            }
        }
        let mut g = LabeledGraph::new(self.labels.iter().cloned());
        for (q, r) in rows.iter().enumerate() {
            if r.neg || r.z >> q & 1 == 1 {
                return None;
            }
            for u in 0..n {
                if r.z >> u & 1 == 1 {
                    if rows[u].z >> q & 1 == 0 {
                        return None;
                    }
                    g.set_edge_idx(q, u, true);
                }
            }
        }
        Some(g)
    }

    /// Rows commute, generators are independent, destabilizers pair up.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        (0..2 * n).all(|i| {
            (0..2 * n).all(|j| {
                let anti = !self.rows[i].commutes(&self.rows[j]);
                anti == (i + n == j || j + n == i)
            })
        })
    }

    /// Local Clifford realizing local complementation at `v` on a graph state
    /// with graph `g`: `√(−iX)` on `v`, `√(iZ)` on each neighbor.
    pub fn apply_lc_gates(&mut self, g: &LabeledGraph, v: &VertexId) -> Result<()> {
        let q = self.qubit(v)?;
        self.h(q);
        self.s(q);
        self.h(q);
        for u in g.neighbors(v)? {
            let k = self.qubit(&u)?;
            self.sdg(k);
        }
        Ok(())
    }

    /// LC circuit at `v` for a tableau that currently is a graph state.
    pub fn apply_lc_circuit(&mut self, v: &VertexId) -> Result<()> {
        let g = self.to_graph().ok_or_else(|| Error::Internal("tableau is not a graph state".into()))?;
        self.apply_lc_gates(&g, v)
    }
}

/// `|g⟩`: `|+⟩` on every vertex and CZ along every edge.
pub fn graph_state(g: &LabeledGraph) -> Result<StabilizerTableau> {
    let mut t = StabilizerTableau::zeros(g.vertices().to_vec())?;
    for q in 0..g.n() {
        t.h(q);
    }
    for (a, b) in g.edge_indices() {
        t.cz(a, b);
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchFailure {
    pub outcomes: Vec<(VertexId, bool)>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub branches: usize,
    pub failure: Option<BranchFailure>,
}

struct Run<'a> {
    plan: &'a TransformationPlan,
    target: &'a LabeledGraph,
    branches: usize,
    failure: Option<BranchFailure>,
}

impl Run<'_> {
    fn fail(&mut self, outcomes: &[(VertexId, bool)], reason: String) {
        if self.failure.is_none() {
            self.failure = Some(BranchFailure { outcomes: outcomes.to_vec(), reason });
        }
    }

    /// Follows the plan from move `k`; `t` holds `|g⟩` on the unmeasured
    /// qubits exactly.
    fn go(&mut self, k: usize, t: StabilizerTableau, g: LabeledGraph, outcomes: &mut Vec<(VertexId, bool)>) -> Result<()> {
        if self.failure.is_some() {
            return Ok(());
        }
        let Some(m) = self.plan.moves.get(k) else {
            self.branches += 1;
            if !t.holds_graph_state(self.target)? {
                self.fail(outcomes, "final state is not the target graph state".into());
            }
            return Ok(());
        };
        let v = m.vertex();
        let Some(basis) = m.basis() else {
            let mut t = t;
            t.apply_lc_gates(&g, v)?;
            return self.go(k + 1, t, g.local_complement(v)?, outcomes);
        };
        let partner = match m {
            Move::MeasX { partner, .. } => x_partner(&g, g.idx(v)?, partner.as_ref())?.map(|j| g.label(j).clone()),
            _ => None,
        };
        let next = measure(&g, v, basis, partner.as_ref())?;
        let mut seen_deterministic = false;
        for outcome in [false, true] {
            if seen_deterministic {
                break;
            }
            let mut branch = t.clone();
            match branch.measure_pauli(basis, v, outcome) {
                Ok(det) => seen_deterministic = det,
                Err(Error::InvalidOutcome(_)) => continue,
                Err(e) => return Err(e),
            }
            outcomes.push((v.clone(), outcome));
            // Clifford part of the correction, modulo Paulis
            match basis {
                Basis::Z => {}
                Basis::Y => {
                    for u in g.neighbors(v)? {
                        let q = branch.qubit(&u)?;
                        branch.s(q);
                    }
                }
                Basis::X => {
                    if let Some(p) = &partner {
                        let q = branch.qubit(p)?;
                        branch.h(q);
                    }
                }
            }
            // Pauli part: a Z on every vertex whose generator came out negative
            let mut ok = true;
            for u in next.vertices() {
                match branch.sign_of(&branch.graph_generator(&next, u)?) {
                    Some(false) => {}
                    Some(true) => {
                        let q = branch.qubit(u)?;
                        branch.z(q);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok || !branch.holds_graph_state(&next)? {
                self.fail(outcomes, format!("measuring {v} does not leave a graph state of the rewritten graph"));
            } else {
                debug_assert!(branch.check_invariants());
                self.go(k + 1, branch, next.clone(), outcomes)?;
            }
            outcomes.pop();
        }
        Ok(())
    }
}

/// Simulates `plan` on `|g⟩`, following both outcomes of every random
/// measurement and applying the outcome-dependent local corrections
/// recomputed from the graph. Passes when every branch ends in exactly
/// `|target⟩` on the target qubits.
pub fn verify_plan_report(g: &LabeledGraph, target: &LabeledGraph, plan: &TransformationPlan, cap: usize) -> Result<VerifyReport> {
    if g.n() > cap.min(32) {
        return Err(Error::SizeCapExceeded { size: g.n(), cap: cap.min(32) });
    }
    let mut tv = target.vertices().to_vec();
    tv.sort();
    let mut pv = plan.target_vertices.clone();
    pv.sort();
    if tv != pv {
        return Err(Error::InvalidPlan("plan and target disagree on the target vertices".into()));
    }
    plan.validate()?;
    let measured = plan.measured();
    for v in g.vertices() {
        if !target.contains(v) && !measured.contains(v) {
            return Err(Error::InvalidPlan(format!("{v} is neither a target nor measured")));
        }
    }
    let mut run = Run { plan, target, branches: 0, failure: None };
    run.go(0, graph_state(g)?, g.clone(), &mut Vec::new())?;
    Ok(VerifyReport { ok: run.failure.is_none(), branches: run.branches, failure: run.failure })
}

pub fn verify_plan(g: &LabeledGraph, target: &LabeledGraph, plan: &TransformationPlan) -> Result<bool> {
    Ok(verify_plan_report(g, target, plan, DEFAULT_QUBIT_CAP)?.ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vs;

    fn pauli(s: &str) -> Pauli {
        let mut p = Pauli::identity();
        for (q, c) in s.chars().enumerate() {
            match c {
                'X' => p.x |= 1 << q,
                'Z' => p.z |= 1 << q,
                'Y' => {
                    p.x |= 1 << q;
                    p.z |= 1 << q
                }
                _ => {}
            }
        }
        p
    }

    #[test]
    fn pauli_products() {
        // XZ = -iY, so X·Z is not Hermitian; check commuting products instead
        let xx = pauli("XX");
        let zz = pauli("ZZ");
        assert_eq!(xx.mul(&zz), Pauli { neg: true, ..pauli("YY") });
        assert_eq!(pauli("YZ").mul(&pauli("ZY")), pauli("XX"));
    }

    #[test]
    fn edge_state_generators() {
        let g = LabeledGraph::path(&vs(&[0, 1]));
        let t = graph_state(&g).unwrap();
        assert_eq!(t.sign_of(&pauli("XZ")), Some(false));
        assert_eq!(t.sign_of(&pauli("ZX")), Some(false));
        assert_eq!(t.sign_of(&pauli("YY")), Some(false));
        assert_eq!(t.sign_of(&pauli("ZZ")), None);
        assert!(t.check_invariants());
    }

    #[test]
    fn single_vertex_is_plus() {
        let t = graph_state(&LabeledGraph::new(vs(&[0]))).unwrap();
        assert_eq!(t.sign_of(&pauli("X")), Some(false));
    }

    #[test]
    fn star_with_hadamards_on_leaves_is_ghz() {
        let g = LabeledGraph::star(VertexId::Num(0), vs(&[1, 2, 3]));
        let mut t = graph_state(&g).unwrap();
        for q in 1..4 {
            t.h(q);
        }
        for s in ["XXXX", "ZZ..", ".ZZ.", "..ZZ"] {
            assert_eq!(t.sign_of(&pauli(s)), Some(false), "{s}");
        }
    }

    #[test]
    fn lc_circuit_matches_local_complementation() {
        let g = LabeledGraph::from_edge_list([(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)].map(|(a, b)| (VertexId::Num(a), VertexId::Num(b)))).unwrap();
        for v in g.vertices() {
            let mut t = graph_state(&g).unwrap();
            t.apply_lc_circuit(v).unwrap();
            assert_eq!(t.to_graph().unwrap(), g.local_complement(v).unwrap());
        }
    }

    #[test]
    fn z_on_star_leaf_leaves_smaller_star() {
        let g = LabeledGraph::star(VertexId::Num(0), vs(&[1, 2, 3]));
        for outcome in [false, true] {
            let mut t = graph_state(&g).unwrap();
            assert!(!t.measure_pauli(Basis::Z, &VertexId::Num(3), outcome).unwrap());
            let rest = LabeledGraph::star(VertexId::Num(0), vs(&[1, 2]));
            // the −1 outcome leaves a Z on the center
            if outcome {
                t.z(0);
            }
            assert!(t.holds_graph_state(&rest).unwrap());
        }
    }

    #[test]
    fn measuring_a_stabilizer_is_deterministic() {
        let g = LabeledGraph::path(&vs(&[0, 1, 2]));
        let mut t = graph_state(&g).unwrap();
        t.measure_pauli(Basis::Z, &VertexId::Num(1), false).unwrap();
        let before = t.clone();
        assert!(t.measure_pauli(Basis::Z, &VertexId::Num(1), false).unwrap());
        assert_eq!(t.stabilizers().iter().map(|p| t.sign_of(p)).collect::<Vec<_>>(), before.stabilizers().iter().map(|p| before.sign_of(p)).collect::<Vec<_>>());
        assert!(matches!(t.measure_pauli(Basis::Z, &VertexId::Num(1), true), Err(Error::InvalidOutcome(_))));
    }

    #[test]
    fn plans_verify_and_mutants_fail() {
        let g = LabeledGraph::cycle(&vs(&[0, 1, 2, 3, 4]));
        let target = LabeledGraph::star(VertexId::Num(0), vs(&[2, 3]));
        let plan = crate::small::small_vertex_minor(&g, &target).unwrap();
        let r = verify_plan_report(&g, &target, &plan, 16).unwrap();
        assert!(r.ok && r.branches >= 2, "{r:?}");
        let lc = plan.moves.iter().position(|m| !m.is_measurement()).unwrap();
        let mut broken = plan.clone();
        broken.moves.remove(lc);
        assert!(!verify_plan(&g, &target, &broken).unwrap());
    }
}
