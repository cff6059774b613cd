//! Built-in example complexes.
//!
//! The `s2xs4` values are unit-sphere height sums normalized so the minimum
//! sits at 0 and perturbed apart so every critical value is distinct.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{DifferentialEntry, FilteredComplex, Generator};
use crate::error::{Error, Result};
use crate::homology::ActionTable;
use crate::ring::{RingElement, RingModel};

pub const NAMES: [&str; 4] = ["s2xs4", "s2xs4-sum", "circle-shift", "random"];

/// Three generators, `∂a = b + c`.
pub fn fix_a() -> FilteredComplex {
    FilteredComplex::plain(
        &[("a", 1, 2.0), ("b", 0, 1.0), ("c", 0, 0.0)],
        &[("a", "b"), ("a", "c")],
    )
    .expect("static fixture")
}

/// The product of the height functions on S² and S⁴ over the loop ring
/// model with generators `a` (degree 1), `b` (degree 3) and `g = ab`.
pub fn s2xs4() -> FilteredComplex {
    FilteredComplex::build(
        RingModel::builtin("s2xs4").expect("builtin ring"),
        &[("p0", 0, 0.0), ("p2", 2, 1.9), ("p4", 4, 2.1), ("p6", 6, 4.0)],
        &[
            ("p6", "p4", &["a"]),
            ("p6", "p2", &["b"]),
            ("p4", "p0", &["b"]),
            ("p2", "p0", &["a"]),
        ],
    )
    .expect("static fixture")
}

/// The connected sum of two copies of [`s2xs4`], perturbed to a single
/// maximum and minimum.
pub fn s2xs4_sum() -> FilteredComplex {
    FilteredComplex::build(
        RingModel::builtin("s2xs4-sum").expect("builtin ring"),
        &[
            ("p0", 0, 0.0),
            ("p2_2", 2, 1.8),
            ("p2_1", 2, 1.9),
            ("p4_2", 4, 2.05),
            ("p4_1", 4, 2.1),
            ("p6", 6, 4.0),
        ],
        &[
            ("p6", "p4_1", &["a1"]),
            ("p6", "p4_2", &["a2"]),
            ("p6", "p2_1", &["b1"]),
            ("p6", "p2_2", &["b2"]),
            ("p4_1", "p0", &["b1"]),
            ("p4_2", "p0", &["b2"]),
            ("p2_1", "p0", &["a1"]),
            ("p2_2", "p0", &["a2"]),
        ],
    )
    .expect("static fixture")
}

/// Two generators `top` (degree 1, value k) and `bottom` (degree 0,
/// value -k) with zero differential.
pub fn circle_shift(k: f64) -> Result<FilteredComplex> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Malformed(format!("circle-shift needs k > 0, got {k}")));
    }
    FilteredComplex::plain(&[("top", 1, k), ("bottom", 0, -k)], &[])
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomParams {
    pub generators: usize,
    /// Generator degrees are drawn from `0..degrees`.
    pub degrees: i32,
    pub seed: u64,
    /// Built-in ring name; `None` means the trivial ring.
    pub ring: Option<String>,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            generators: 6,
            degrees: 3,
            seed: 0,
            ring: None,
        }
    }
}

/// A pseudo-random validating complex. Entries are proposed in random
/// order and kept only when the complex still validates.
pub fn random(params: &RandomParams) -> Result<FilteredComplex> {
    if params.degrees < 1 {
        return Err(Error::Malformed("random needs at least one degree".into()));
    }
    let ring = match &params.ring {
        Some(name) => RingModel::builtin(name)?,
        None => RingModel::trivial(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let generators: Vec<Generator> = (0..params.generators)
        .map(|i| {
            let degree = rng.gen_range(0..params.degrees);
            // values loosely follow degree so that most pairs are admissible;
            // multiples of 1/64 keep sums and differences exact
            let noise: f64 = rng.gen_range(0.0..2.0);
            let value = ((degree as f64 * 0.5 + noise) * 64.0).round() / 64.0;
            Generator::new(format!("g{i}"), degree, value)
        })
        .collect();
    let mut pairs = Vec::new();
    for s in &generators {
        for t in &generators {
            if s.degree > t.degree && s.value > t.value {
                pairs.push((s.clone(), t.clone()));
            }
        }
    }
    pairs.shuffle(&mut rng);
    let mut entries: Vec<DifferentialEntry> = Vec::new();
    for (s, t) in pairs {
        if !rng.gen_bool(0.6) {
            continue;
        }
        let want = (s.degree - t.degree - 1) as u32;
        let Some(coefficient) = random_element(&ring, want, &mut rng) else {
            continue;
        };
        entries.push(DifferentialEntry {
            source: s.name.clone(),
            target: t.name.clone(),
            coefficient,
        });
        let candidate = FilteredComplex::new(ring.clone(), generators.clone(), entries.clone(), true)?;
        if !candidate.validate().is_ok() {
            entries.pop();
        }
    }
    FilteredComplex::new(ring, generators, entries, true)
}

fn random_element(ring: &RingModel, degree: u32, rng: &mut impl Rng) -> Option<RingElement> {
    let candidates: Vec<usize> = (0..ring.len()).filter(|&i| ring.degree(i) == degree).collect();
    if candidates.is_empty() {
        return None;
    }
    loop {
        let picked = candidates.iter().copied().filter(|_| rng.gen_bool(0.5));
        let e = RingElement::from_indices(ring.len(), picked);
        if !e.is_zero() {
            return Some(e);
        }
    }
}

/// Builds a named example. `params` are positional: `circle-shift` takes k;
/// `random` takes generator count, degree spread, seed and an optional ring.
pub fn example(name: &str, params: &[String]) -> Result<FilteredComplex> {
    let num = |i: usize, what: &str| -> Result<Option<u64>> {
        params
            .get(i)
            .map(|p| {
                p.parse::<u64>()
                    .map_err(|_| Error::Malformed(format!("{what} must be a natural number, got `{p}`")))
            })
            .transpose()
    };
    match name {
        "s2xs4" | "s2xs4-sum" if !params.is_empty() => {
            Err(Error::Malformed(format!("example {name} takes no parameters")))
        }
        "s2xs4" => Ok(s2xs4()),
        "s2xs4-sum" => Ok(s2xs4_sum()),
        "circle-shift" => {
            let k = match params {
                [] => 1.0,
                [k] => k
                    .parse::<f64>()
                    .map_err(|_| Error::Malformed(format!("k must be a number, got `{k}`")))?,
                _ => return Err(Error::Malformed("circle-shift takes one parameter".into())),
            };
            circle_shift(k)
        }
        "random" => {
            if params.len() > 4 {
                return Err(Error::Malformed("random takes at most four parameters".into()));
            }
            let d = RandomParams::default();
            random(&RandomParams {
                generators: num(0, "generator count")?.map_or(d.generators, |v| v as usize),
                degrees: num(1, "degree spread")?.map_or(d.degrees, |v| v as i32),
                seed: num(2, "seed")?.unwrap_or(d.seed),
                ring: params.get(3).cloned(),
            })
        }
        _ => Err(Error::UnknownName {
            kind: "example",
            name: name.to_string(),
        }),
    }
}

/// Morse data of the S²×S⁴ height function (zero differential), a Floer
/// complex with one generator per critical point, and intersection-product
/// and module-action tables in which every non-unit action lowers the value
/// by at least 0.2.
pub fn action_fixture() -> (FilteredComplex, FilteredComplex, ActionTable) {
    let morse = s2xs4().underlying_plain();
    let floer = FilteredComplex::plain(&[("x0", 0, 0.0), ("x2", 2, 1.9), ("x4", 4, 2.1), ("x6", 6, 4.0)], &[])
        .expect("static fixture");
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut table = ActionTable::default();
    for (p, q, r) in [
        ("p6", "p6", &["p6"][..]),
        ("p6", "p4", &["p4"]),
        ("p4", "p6", &["p4"]),
        ("p6", "p2", &["p2"]),
        ("p2", "p6", &["p2"]),
        ("p6", "p0", &["p0"]),
        ("p0", "p6", &["p0"]),
        ("p4", "p2", &["p0"]),
        ("p2", "p4", &["p0"]),
    ] {
        table.morse_product.push((p.into(), q.into(), s(r)));
    }
    for (p, x, y) in [
        ("p6", "x0", &["x0"][..]),
        ("p6", "x2", &["x2"]),
        ("p6", "x4", &["x4"]),
        ("p6", "x6", &["x6"]),
        ("p4", "x2", &["x0"]),
        ("p2", "x4", &["x0"]),
        ("p2", "x6", &["x2"]),
        ("p4", "x6", &["x4"]),
        ("p0", "x6", &["x0"]),
    ] {
        table.module_action.push((p.into(), x.into(), s(y)));
    }
    (morse, floer, table)
}
