mod common;

use std::collections::BTreeSet;

use common::{iri, naive_saturate, random_feo_graph, raw_set, rng};
use feo::inference::{feo_ruleset, saturate, saturate_with, SaturationOptions};
use feo::kb;
use feo::rdf::{Graph, Term, Triple};
use feo::vocab::{eo, feo as f, rdf};
use proptest::prelude::*;

fn sat(g: &Graph) -> Graph {
    saturate(g, &feo_ruleset()).unwrap().thaw()
}

#[test]
fn demo_kb_matches_naive_evaluation() {
    let g = kb::demo_kb();
    assert_eq!(raw_set(&sat(&g)), naive_saturate(&g));
}

#[test]
fn demo_kb_reaches_the_season_transitively() {
    let s = sat(&kb::demo_kb());
    let t = Triple::new(
        iri("https://purl.org/heals/feo#CauliflowerPotatoCurry"),
        iri(f::HAS_CHARACTERISTIC),
        iri("https://purl.org/heals/feo#Autumn"),
    )
    .unwrap();
    assert!(s.contains(&t));
}

#[test]
fn derived_count_is_reported_by_the_trace() {
    let g = kb::demo_kb();
    let s = saturate_with(&g, &feo_ruleset(), SaturationOptions::default()).unwrap();
    assert_eq!(s.trace.len(), s.graph.len() - g.len());
}

/// Drops everything mentioning a verdict class and keeps at most one
/// question edge, so the graph describes a single-parameter question.
fn single_question(g: &Graph) -> Graph {
    let verdicts = [iri(eo::FACT), iri(eo::FOIL)];
    let mut seen_question = false;
    g.iter()
        .filter(|t| {
            let (s, p, o) = (t.subject(), t.predicate(), t.object());
            !(verdicts.contains(s) || verdicts.contains(p) || verdicts.contains(o))
        })
        .filter(|t| {
            if t.predicate() == &iri(f::HAS_PARAMETER) {
                let first = !seen_question;
                seen_question = true;
                first
            } else {
                true
            }
        })
        .collect()
}

fn types(g: &Graph, x: &Term, class: &str) -> bool {
    g.contains(&Triple::new(x.clone(), iri(rdf::TYPE), iri(class)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn semi_naive_equals_naive(seed in any::<u64>()) {
        let g = random_feo_graph(&mut rng(seed), 50);
        prop_assert_eq!(raw_set(&sat(&g)), naive_saturate(&g));
    }

    #[test]
    fn saturation_is_monotone_and_idempotent(seed in any::<u64>()) {
        let g = random_feo_graph(&mut rng(seed), 50);
        let once = sat(&g);
        prop_assert!(g.iter().all(|t| once.contains(&t)));
        let twice = sat(&once);
        prop_assert_eq!(raw_set(&twice), raw_set(&once));
    }

    #[test]
    fn saturation_is_monotone_in_the_input(seed in any::<u64>()) {
        let mut r = rng(seed);
        let small = random_feo_graph(&mut r, 25);
        let mut big = small.clone();
        big.extend_from(&random_feo_graph(&mut r, 25));
        let (s_small, s_big) = (sat(&small), sat(&big));
        // Stratum-0 conclusions only grow; verdicts may be retracted by r11.
        let verdict = |t: &Triple| t.object() == &iri(eo::FOIL) || t.object() == &iri(eo::FACT);
        prop_assert!(s_small.iter().filter(|t| !verdict(t)).all(|t| s_big.contains(&t)));
    }

    #[test]
    fn verdicts_do_not_feed_back(seed in any::<u64>()) {
        let g = random_feo_graph(&mut rng(seed), 50);
        let s = raw_set(&sat(&g));
        prop_assert_eq!(common::missing_stratum0(&s), BTreeSet::new());
    }

    #[test]
    fn quadrant_soundness(seed in any::<u64>()) {
        let g = single_question(&random_feo_graph(&mut rng(seed), 50));
        let s = sat(&g);
        let params: Vec<Term> = s
            .match_pattern(None, Some(&iri(f::HAS_PARAMETER)), None)
            .into_iter()
            .map(|t| t.object().clone())
            .collect();
        prop_assume!(params.len() == 1);
        let p = &params[0];
        let characteristics = s.objects(p, &iri(f::HAS_CHARACTERISTIC));
        for fact in s.subjects(&iri(rdf::TYPE), &iri(eo::FACT)) {
            prop_assert!(characteristics.contains(&fact));
            prop_assert!(types(&s, &fact, f::ECOSYSTEM_CHARACTERISTIC));
        }
        for c in &characteristics {
            let eco = types(&s, c, f::ECOSYSTEM_CHARACTERISTIC);
            prop_assert_eq!(types(&s, c, eo::FACT), eco);
            if !eco {
                prop_assert!(types(&s, c, eo::FOIL));
            }
        }
    }
}
