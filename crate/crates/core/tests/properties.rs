use proptest::prelude::*;
use spectral_invariants::builtin::{self, RandomParams};
use spectral_invariants::format::{self, Document};
use spectral_invariants::higher::{self, HigherInvariants};
use spectral_invariants::{report, Execution, FilteredComplex, FilteredHomology};

fn random(generators: usize, degrees: i32, seed: u64, ring: Option<&str>) -> FilteredComplex {
    builtin::random(&RandomParams {
        generators,
        degrees,
        seed,
        ring: ring.map(String::from),
    })
    .unwrap()
}

fn ring_choice() -> impl Strategy<Value = Option<&'static str>> {
    prop_oneof![Just(None), Just(Some("s2xs4")), Just(Some("s2xs4-sum"))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_complexes_validate_and_round_trip(n in 1usize..9, d in 1i32..6, seed in any::<u64>(), ring in ring_choice()) {
        let c = random(n, d, seed, ring);
        prop_assert!(c.validate().is_ok());
        let back = format::parse(&format::serialize(&Document::new(c.clone()))).unwrap();
        prop_assert_eq!(back.complex, c);
    }

    #[test]
    fn sequential_and_parallel_reports_agree(n in 1usize..7, seed in any::<u64>(), ring in ring_choice()) {
        let doc = Document::new(random(n, 5, seed, ring));
        let a = report::build(&doc, None, Execution::Sequential).unwrap();
        let b = report::build(&doc, None, Execution::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn scans_match_refined_grid(n in 2usize..8, seed in any::<u64>(), ring in ring_choice()) {
        let c = random(n, 5, seed, ring);
        let grid = higher::refined_grid(&c.sorted_values());
        let max_r = if c.ring().is_trivial() { 3 } else { 3.min(c.ring().truncation_degree() + 1) };
        for r in 2..=max_r {
            let h = HigherInvariants::new(&c, r, Execution::Parallel).unwrap();
            for k in h.page().basis_classes() {
                prop_assert_eq!(Some(h.sigma_bar(&k).unwrap()), higher::sigma_bar_on_grid(&h, &k, &grid));
                prop_assert_eq!(Some(h.sigma_tilde(&k).unwrap()), higher::sigma_tilde_on_grid(&h, &k, &grid));
            }
        }
    }

    #[test]
    fn sigma_is_a_generator_value(n in 1usize..10, seed in any::<u64>(), ring in ring_choice()) {
        let c = random(n, 4, seed, ring);
        let values = c.sorted_values();
        let h = FilteredHomology::new(&c).unwrap();
        for k in h.all_classes() {
            prop_assert!(values.contains(&h.sigma(&k).unwrap()));
        }
    }

    #[test]
    fn dual_of_dual_restores_sigma(n in 1usize..8, seed in any::<u64>()) {
        let c = random(n, 3, seed, None);
        let dd = c.dualize().unwrap().dualize().unwrap()
            .renamed(|s| s.trim_end_matches('\'').to_string()).unwrap();
        let (h, hd) = (FilteredHomology::new(&c).unwrap(), FilteredHomology::new(&dd).unwrap());
        for k in h.all_classes() {
            let kd = hd.class_of_chain(&k.representative).unwrap();
            prop_assert_eq!(h.sigma(&k).unwrap(), hd.sigma(&kd).unwrap());
        }
    }
}

#[test]
fn truncation_views_agree_with_truncated_complexes() {
    let c = builtin::s2xs4_sum();
    for nu in c.sorted_values() {
        let below = c.truncate_below(nu);
        let h = FilteredHomology::new(&below).unwrap();
        let total: usize = h.ranks().values().sum();
        let page = spectral_invariants::spectral::limit_page(&below, Execution::Sequential).unwrap();
        assert_eq!(page.total_dims().values().sum::<usize>(), total);
    }
}
