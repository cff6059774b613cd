//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use spectral_invariants::builtin::{self, RandomParams};
use spectral_invariants::higher::{self, HigherInvariants};
use spectral_invariants::homology::{check_duality, cup_length, product_inequality, validate_action};
use spectral_invariants::spectral::{self, ComplexView};
use spectral_invariants::{
    expr, ChainElement, DifferentialEntry, Execution, FilteredComplex, FilteredHomology, Generator, RingModel,
    SpectralPage,
};

const EXEC: Execution = Execution::Parallel;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn class(c: &FilteredComplex, text: &str) -> ChainElement {
    expr::parse_class(c, text).expect("fixture class")
}

fn plain_randoms() -> Vec<FilteredComplex> {
    (0..200u64)
        .map(|i| {
            builtin::random(&RandomParams {
                generators: 1 + (i % 10) as usize,
                degrees: 1 + ((i / 10) % 3) as i32,
                seed: i,
                ring: None,
            })
            .expect("random plain complex")
        })
        .collect()
}

fn extended_randoms() -> Vec<FilteredComplex> {
    (0..100u64)
        .map(|i| {
            let ring = if i % 2 == 0 { "s2xs4" } else { "s2xs4-sum" };
            builtin::random(&RandomParams {
                generators: 2 + (i % 7) as usize,
                degrees: [3, 5, 7][(i % 3) as usize],
                seed: 1000 + i,
                ring: Some(ring.into()),
            })
            .expect("random extended complex")
        })
        .collect()
}

/// Last page the refusal rule permits, capped at stabilization.
fn max_page(c: &FilteredComplex) -> u32 {
    let view = ComplexView::full(Arc::new(c.total_complex().unwrap()));
    let stable = spectral::stable_page_index(&view).max(2);
    if c.ring().is_trivial() {
        stable
    } else {
        stable.min(c.ring().truncation_degree() + 1)
    }
}

fn golden_simple() -> Outcome {
    let c = builtin::s2xs4();
    ensure(c.validate().is_ok(), || {
        format!("s2xs4 does not validate: {}", c.validate())
    })?;
    let v = e(higher::higher(&c, 2, &class(&c, "a*p4"), EXEC))?;
    ensure(v.c_bar == Some(2.1), || format!("c_bar^2(a*p4) = {:?}", v.c_bar))?;
    Ok("c_bar^2(a*p4) = 2.1".into())
}

fn golden_sum() -> Outcome {
    let c = builtin::s2xs4_sum();
    ensure(c.validate().is_ok(), || "s2xs4-sum does not validate".into())?;
    let k = class(&c, "a1*p4_1");
    let v2 = e(higher::higher(&c, 2, &k, EXEC))?;
    let v3 = e(higher::higher(&c, 3, &k, EXEC))?;
    ensure(v2.c_bar == Some(2.1), || format!("c_bar^2 = {:?}", v2.c_bar))?;
    ensure(v3.c_bar == Some(2.05), || format!("c_bar^3 = {:?}", v3.c_bar))?;
    Ok("c_bar^2 = 2.1, c_bar^3 = 2.05".into())
}

fn oracle_equivalence(plain: &[FilteredComplex]) -> Outcome {
    let mut checked = 0;
    for (i, c) in plain.iter().enumerate() {
        let h = e(FilteredHomology::new(c))?;
        for k in h.all_classes() {
            let fast = e(h.sigma(&k))?;
            let slow = e(h.sigma_oracle(&k))?;
            ensure(fast == slow, || {
                format!("complex {i}, class {}: {fast} vs oracle {slow}", k.representative)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} classes on {} complexes", plain.len()))
}

/// `dim ker d_r - dim im d_r` per cell of `page`, from its differential
/// matrices.
fn page_homology(page: &SpectralPage) -> Result<BTreeMap<(i32, i32), usize>, String> {
    let r = page.r() as i32;
    let mut out = BTreeMap::new();
    for cell in page.cells() {
        let (p, q) = (cell.p, cell.q);
        let outgoing = e(page.differential_matrix(p, q))?.rank();
        let incoming = e(page.differential_matrix(p + r, q - r + 1))?.rank();
        let dim = cell.dim() - outgoing - incoming;
        if dim > 0 {
            out.insert((p, q), dim);
        }
    }
    Ok(out)
}

fn page_turning(extended: &[FilteredComplex]) -> Outcome {
    let mut turns = 0;
    for (i, c) in extended.iter().enumerate() {
        let view = ComplexView::full(Arc::new(e(c.total_complex())?));
        let stable = spectral::stable_page_index(&view);
        let mut page = e(SpectralPage::compute(view.clone(), 1, EXEC))?;
        for r in 1..=stable {
            let direct = e(SpectralPage::compute(view.clone(), r + 1, EXEC))?;
            let turned = e(spectral::turn_page(&page, EXEC))?;
            let expected = page_homology(&page)?;
            ensure(turned.dims() == direct.dims() && expected == direct.dims(), || {
                format!(
                    "complex {i}, page {r}: H(E^r) {expected:?}, E^(r+1) {:?}",
                    direct.dims()
                )
            })?;
            page = turned;
            turns += 1;
        }
    }
    Ok(format!("{turns} page turns on {} complexes", extended.len()))
}

fn convergence(all: &[FilteredComplex]) -> Outcome {
    for (i, c) in all.iter().enumerate() {
        let limit = e(spectral::limit_page(c, EXEC))?.total_dims();
        let ranks: BTreeMap<i32, usize> = e(FilteredHomology::new(c))?
            .ranks()
            .into_iter()
            .filter(|&(_, r)| r > 0)
            .collect();
        ensure(limit == ranks, || {
            format!("complex {i}: limit {limit:?}, homology {ranks:?}")
        })?;
    }
    Ok(format!("{} complexes", all.len()))
}

fn decomposition_and_ordering(plain: &[FilteredComplex], extended: &[FilteredComplex]) -> Outcome {
    let ring = RingModel::builtin("s2xs4-sum").unwrap();
    let mut decomposed = 0;
    for (i, c) in plain.iter().enumerate().step_by(4) {
        let h = e(FilteredHomology::new(c))?;
        let tensored = e(c.tensor_ring(ring.clone()))?;
        let hi = e(HigherInvariants::new(&tensored, 2, EXEC))?;
        for (&d, &rank) in &h.ranks() {
            if rank == 0 {
                continue;
            }
            let classes = h.classes(d);
            let mut cases: Vec<Vec<(&str, usize)>> = vec![vec![("1", 0)], vec![("a1", 0)]];
            if rank >= 2 {
                cases.push(vec![("a1", 0), ("a2", 1)]);
                cases.push(vec![("b1", 1), ("b2", 0)]);
            } else {
                cases.push(vec![("a1", 0), ("a2", 0)]);
            }
            for case in cases {
                let terms: Vec<(&str, _)> = case.iter().map(|&(t, j)| (t, &classes[j])).collect();
                let rep = e(higher::tensor_representative(&ring, &terms))?;
                let expected = e(higher::mixed_page_sigma(&h, &ring, &terms))?;
                let k = e(hi.class(&rep))?;
                let (bar, tilde) = (e(hi.sigma_bar(&k))?, e(hi.sigma_tilde(&k))?);
                ensure(bar == expected && tilde == expected, || {
                    format!("complex {i}, {rep}: bar {bar}, tilde {tilde}, max sigma {expected}")
                })?;
                decomposed += 1;
            }
        }
    }
    let mut ordered = 0;
    let mut strict = 0;
    let mut first_strict = None;
    for (i, c) in plain.iter().chain(extended).enumerate() {
        for r in 2..=max_page(c) {
            let hi = e(HigherInvariants::new(c, r, EXEC))?;
            for k in hi.page().basis_classes() {
                let v = hi.value(&k).map_err(|err| format!("complex {i}: {err}"))?;
                ensure(v.sigma_tilde <= v.sigma_bar, || format!("complex {i}: {v:?}"))?;
                if v.sigma_tilde < v.sigma_bar {
                    strict += 1;
                    first_strict.get_or_insert_with(|| {
                        format!(
                            "; first strict: complex {i}, r = {r}, {} has tilde {} < bar {}",
                            v.class, v.sigma_tilde, v.sigma_bar
                        )
                    });
                }
                ordered += 1;
            }
        }
    }
    Ok(format!(
        "{decomposed} decomposable page-2 classes, {ordered} ordered values ({strict} strict){}",
        first_strict.unwrap_or_default()
    ))
}

fn gap_inequality(extended: &[FilteredComplex]) -> Outcome {
    let mut entries = 0;
    let fixtures = [builtin::s2xs4(), builtin::s2xs4_sum()];
    for (i, c) in extended.iter().chain(&fixtures).enumerate() {
        let report = e(higher::gap_report(c, max_page(c), EXEC))?;
        ensure(report.checks.is_ok(), || format!("complex {i}: {}", report.checks))?;
        for g in &report.entries {
            ensure(g.source_tilde - g.target_tilde >= 0.0, || format!("complex {i}: {g:?}"))?;
        }
        entries += report.entries.len();
    }
    Ok(format!("{entries} gap entries"))
}

const SHIFTS: [f64; 8] = [0.5, -0.25, 1.0, 3.0, -2.125, 0.0625, -0.75, 0.125];

/// Whether `a + b` is representable, via the error term of TwoSum.
fn sum_is_exact(a: f64, b: f64) -> bool {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    err == 0.0
}

fn stability() -> Outcome {
    let eps = 0.01;
    let mut bases = vec![builtin::s2xs4()];
    for i in 0..20u64 {
        bases.push(
            builtin::random(&RandomParams {
                generators: 3 + (i % 6) as usize,
                degrees: if i % 2 == 0 { 3 } else { 5 },
                seed: 5000 + i,
                ring: (i % 2 == 1).then(|| "s2xs4".to_string()),
            })
            .unwrap(),
        );
    }
    let (mut matched, mut shifts) = (0, 0);
    for (i, c) in bases.iter().enumerate() {
        let h = e(FilteredHomology::new(c))?;
        let classes = h.all_classes();
        for seed in 0..100 {
            let p = c.perturb_values(eps, seed);
            let hp = e(FilteredHomology::new(&p))?;
            for k in &classes {
                let before = e(h.sigma(k))?;
                let after = e(hp.sigma(&e(hp.class_of_chain(&k.representative))?))?;
                ensure((after - before).abs() <= eps, || {
                    format!("complex {i}, seed {seed}, {}: {before} -> {after}", k.representative)
                })?;
                matched += 1;
            }
        }
        let exact: Vec<f64> = SHIFTS
            .into_iter()
            .filter(|&s| c.generators().iter().all(|g| sum_is_exact(g.value, s)))
            .collect();
        ensure(exact.len() >= 3, || {
            format!("complex {i}: only {} exact shifts", exact.len())
        })?;
        shifts += exact.len();
        for shift in exact {
            let s = c.shifted(shift);
            let hs = e(FilteredHomology::new(&s))?;
            for k in &classes {
                let (Ok(a), Ok(b)) = (h.absolute(k), hs.absolute(&e(hs.class_of_chain(&k.representative))?)) else {
                    continue;
                };
                ensure(a == b, || {
                    format!("complex {i}, shift {shift}, {}: c {a} -> {b}", k.representative)
                })?;
            }
        }
    }
    Ok(format!(
        "{matched} matched classes under perturbation, {shifts} uniform shifts"
    ))
}

fn action_suite() -> Outcome {
    let (morse, floer, table) = builtin::action_fixture();
    let v = e(validate_action(&morse, &floer, &table))?;
    ensure(v.is_ok(), || format!("validate_action: {v}"))?;
    let p = e(product_inequality(&morse, &floer, &table, 0.2))?;
    ensure(p.is_ok(), || format!("product_inequality: {p}"))?;
    let cl = e(cup_length(&morse, &floer, &table, 0.2))?.ok_or("no cup-length chain")?;
    ensure(cl.length >= 2 && cl.holds(), || format!("{cl:?}"))?;
    Ok(format!("chain {:?}: c(top) = {} >= {}", cl.chain, cl.top, cl.bound))
}

/// `d ⊕ d*`, whose homology is duality shaped by construction.
fn doubled(d: &FilteredComplex) -> FilteredComplex {
    let star = d.dualize().unwrap();
    let mut gens: Vec<Generator> = d.generators().to_vec();
    gens.extend(star.generators().iter().cloned());
    let mut entries: Vec<DifferentialEntry> = d.entries().to_vec();
    entries.extend(star.entries().iter().cloned());
    FilteredComplex::new(d.ring().clone(), gens, entries, true).unwrap()
}

fn duality_shaped(c: &FilteredComplex) -> bool {
    let h = FilteredHomology::new(c).unwrap();
    let n = c.max_degree().unwrap_or(0);
    (c.min_degree().unwrap_or(0)..=n).all(|k| h.rank(k) == h.rank(n - k))
}

fn duality() -> Outcome {
    let mut tested = 0;
    let (mut found, mut built) = (0, 0);
    let mut seed = 7000;
    while tested < 50 {
        seed += 1;
        let c = if tested % 2 == 0 {
            builtin::random(&RandomParams {
                generators: 2 + (seed % 7) as usize,
                degrees: 3,
                seed,
                ring: None,
            })
            .unwrap()
        } else {
            let d = builtin::random(&RandomParams {
                generators: 1 + (seed % 4) as usize,
                degrees: 3,
                seed,
                ring: None,
            })
            .unwrap();
            if d.min_degree() != Some(0) {
                continue;
            }
            doubled(&d)
        };
        if c.len() > 8 || !duality_shaped(&c) {
            continue;
        }
        let report = e(check_duality(&c))?;
        ensure(report.is_ok() && report.notes.is_empty(), || {
            format!("seed {seed}: {report}")
        })?;
        if tested % 2 == 0 {
            found += 1;
        } else {
            built += 1;
        }
        tested += 1;
    }
    Ok(format!(
        "{tested} complexes ({found} sampled, {built} doubled), oracle on both sides"
    ))
}

fn growth_family() -> Outcome {
    for k in [1.0, 5.0, 10.0] {
        let c = e(builtin::circle_shift(k))?;
        let h = e(FilteredHomology::new(&c))?;
        let top = e(h.class_of_chain(&class(&c, "top")))?;
        let v = e(h.absolute(&top))?;
        ensure(v == 2.0 * k, || format!("k = {k}: c(top) = {v}"))?;
    }
    Ok("c(top) = 2, 10, 20".into())
}

fn run(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|detail| match limit {
        Some(l) if elapsed > l => Err(format!("{detail}; took {elapsed:?}, limit {l:?}")),
        _ => Ok(detail),
    });
    match &outcome {
        Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{elapsed:.2?}]"),
        Err(detail) => println!("criterion {n:>2} FAIL  {name}: {detail} [{elapsed:.2?}]"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let plain = plain_randoms();
    let extended = extended_randoms();
    let all: Vec<FilteredComplex> = plain.iter().chain(&extended).cloned().collect();
    let results = [
        run(1, "golden simple factor", Some(s(1)), golden_simple),
        run(2, "golden connected sum", Some(s(1)), golden_sum),
        run(3, "oracle equivalence", Some(s(30)), || oracle_equivalence(&plain)),
        run(4, "page-turn consistency", Some(s(60)), || page_turning(&extended)),
        run(5, "convergence", None, || convergence(&all)),
        run(6, "decomposition and ordering", None, || {
            decomposition_and_ordering(&plain, &extended)
        }),
        run(7, "gap inequality", None, || gap_inequality(&extended)),
        run(8, "stability", None, stability),
        run(9, "module action", None, action_suite),
        run(10, "duality", None, duality),
        run(11, "growth family", None, growth_family),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
