use vminor::circle::{four_regular_multigraphs, multigraph_from_word, DoubleOccurrenceWord, MultiGraph};
use vminor::ksoet::{k_soet, soet_exhaustive, KSoetOptions};
use vminor::VertexId;

fn subsets(vs: &[VertexId], max: usize) -> Vec<Vec<VertexId>> {
    (0u32..1 << vs.len())
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| (0..vs.len()).filter(|&i| m >> i & 1 == 1).map(|i| vs[i].clone()).collect())
        .collect()
}

fn check(f: &MultiGraph, opts: &KSoetOptions) -> (usize, usize) {
    let (mut yes, mut no) = (0, 0);
    for m in subsets(f.vertices(), 5) {
        let fast = k_soet(f, &m, opts).unwrap();
        let slow = soet_exhaustive(f, &m, 12).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "{f:?} marked {m:?}");
        if fast.is_some() {
            yes += 1
        } else {
            no += 1
        }
    }
    (yes, no)
}

#[test]
fn agrees_with_tour_enumeration_on_census() {
    let (mut yes, mut no) = (0, 0);
    for n in 1..=5 {
        for f in four_regular_multigraphs(n) {
            let (y, z) = check(&f, &KSoetOptions::default());
            yes += y;
            no += z;
        }
    }
    assert!(yes > 0 && no > 0, "yes={yes} no={no}");
}

#[test]
fn agrees_on_word_graphs_with_six_and_seven_letters() {
    for w in ["abcdefabcdef", "abcadbecfdef", "abcdaebced", "abacdbecfgdgef", "abcdeafbgcdgef"] {
        let (f, _) = multigraph_from_word(&DoubleOccurrenceWord::parse(w).unwrap());
        check(&f, &KSoetOptions::default());
    }
}

#[test]
fn swap_dedup_changes_nothing() {
    let full = KSoetOptions { dedup: false, ..Default::default() };
    for n in 1..=4 {
        for f in four_regular_multigraphs(n) {
            for m in subsets(f.vertices(), 4) {
                let a = k_soet(&f, &m, &KSoetOptions::default()).unwrap().is_some();
                let b = k_soet(&f, &m, &full).unwrap().is_some();
                assert_eq!(a, b);
            }
        }
    }
}
