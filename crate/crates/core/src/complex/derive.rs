use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DifferentialEntry, FilteredComplex, Generator};
use crate::error::{Error, Result};
use crate::ring::RingModel;

const MAX_HALVINGS: u32 = 64;

impl FilteredComplex {
    /// Keeps the generators satisfying `keep` and the entries among them.
    pub fn restrict(&self, keep: impl Fn(&Generator) -> bool) -> FilteredComplex {
        let generators: Vec<Generator> = self.generators.iter().filter(|g| keep(g)).cloned().collect();
        let entries = self
            .entries
            .iter()
            .filter(|e| keep(&self.generators[self.index[&e.source]]) && keep(&self.generators[self.index[&e.target]]))
            .cloned()
            .collect();
        FilteredComplex::new(self.ring.clone(), generators, entries, self.strict_decrease)
            .expect("restriction of a well-formed complex is well formed")
    }

    /// The subcomplex `C^ν` of generators with value `≤ ν`.
    pub fn truncate_below(&self, nu: f64) -> FilteredComplex {
        self.restrict(|g| g.value <= nu)
    }

    /// The quotient `C / C^ν`: generators with value `> ν`, entries into
    /// `C^ν` dropped.
    pub fn quotient_above(&self, nu: f64) -> FilteredComplex {
        self.restrict(|g| g.value > nu)
    }

    /// Same complex with every value replaced by `f(name, value)`.
    pub fn map_values(&self, f: impl Fn(&str, f64) -> f64) -> FilteredComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.value = f(&g.name, g.value);
        }
        out
    }

    /// Adds `eps` to every value.
    pub fn shifted(&self, eps: f64) -> FilteredComplex {
        self.map_values(|_, v| v + eps)
    }

    /// Shifts each value by an independent amount in `[-eps, eps]` drawn
    /// from a ChaCha stream seeded with `seed`. If the shifted values break
    /// monotonicity, all shifts are halved until they do not (after enough
    /// halvings the shifts are zero and the input is returned).
    pub fn perturb_values(&self, eps: f64, seed: u64) -> FilteredComplex {
        if eps <= 0.0 {
            return self.clone();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shifts: Vec<f64> = self.generators.iter().map(|_| rng.gen_range(-eps..=eps)).collect();
        let mut scale = 1.0;
        for _ in 0..MAX_HALVINGS {
            let candidate = self.with_shifts(&shifts, scale);
            if candidate.monotone() {
                return candidate;
            }
            scale *= 0.5;
        }
        self.clone()
    }

    fn with_shifts(&self, shifts: &[f64], scale: f64) -> FilteredComplex {
        let mut out = self.clone();
        for (g, s) in out.generators.iter_mut().zip(shifts) {
            g.value += s * scale;
        }
        out
    }

    fn monotone(&self) -> bool {
        self.coefficients.keys().all(|&(s, t)| {
            let (vs, vt) = (self.generators[s].value, self.generators[t].value);
            if self.strict_decrease {
                vs > vt
            } else {
                vs >= vt
            }
        })
    }

    /// The dual complex: names primed, degrees `n - d` with `n` the top
    /// degree, values negated, differential transposed.
    pub fn dualize(&self) -> Result<FilteredComplex> {
        if !self.is_plain() {
            return Err(Error::Unsupported(
                "duality is implemented for complexes over the trivial ring only".into(),
            ));
        }
        let n = self.max_degree().unwrap_or(0);
        let generators = self
            .generators
            .iter()
            .map(|g| Generator::new(format!("{}'", g.name), n - g.degree, -g.value))
            .collect();
        let entries = self
            .entries
            .iter()
            .map(|e| DifferentialEntry {
                source: format!("{}'", e.target),
                target: format!("{}'", e.source),
                coefficient: e.coefficient.clone(),
            })
            .collect();
        FilteredComplex::new(self.ring.clone(), generators, entries, self.strict_decrease)
    }

    /// Renames every generator through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<FilteredComplex> {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator::new(f(&g.name), g.degree, g.value))
            .collect();
        let entries = self
            .entries
            .iter()
            .map(|e| DifferentialEntry {
                source: f(&e.source),
                target: f(&e.target),
                coefficient: e.coefficient.clone(),
            })
            .collect();
        FilteredComplex::new(self.ring.clone(), generators, entries, self.strict_decrease)
    }

    /// A plain complex viewed over `ring`: every entry gets coefficient `1`.
    pub fn tensor_ring(&self, ring: RingModel) -> Result<FilteredComplex> {
        if !self.is_plain() {
            return Err(Error::Unsupported(
                "tensoring needs a complex over the trivial ring".into(),
            ));
        }
        let unit = ring.element(&[crate::ring::UNIT])?;
        let entries = self
            .entries
            .iter()
            .map(|e| DifferentialEntry {
                source: e.source.clone(),
                target: e.target.clone(),
                coefficient: unit.clone(),
            })
            .collect();
        FilteredComplex::new(ring, self.generators.clone(), entries, self.strict_decrease)
    }

    /// The complex over the trivial ring formed by the unit-coefficient
    /// entries, i.e. the ring-degree-0 line.
    pub fn underlying_plain(&self) -> FilteredComplex {
        let ring = RingModel::trivial();
        let unit = self.ring.unit();
        let entries = self
            .entries
            .iter()
            .filter(|e| unit.is_some_and(|u| e.coefficient.terms().eq([u])))
            .map(|e| DifferentialEntry {
                source: e.source.clone(),
                target: e.target.clone(),
                coefficient: ring.element(&[crate::ring::UNIT]).expect("unit exists"),
            })
            .collect();
        FilteredComplex::new(ring, self.generators.clone(), entries, self.strict_decrease)
            .expect("same generators and a subset of entries")
    }
}

#[cfg(test)]
mod tests {
    use crate::builtin;
    use crate::complex::FilteredComplex;

    fn names(c: &FilteredComplex) -> Vec<String> {
        c.generators().iter().map(|g| g.name.clone()).collect()
    }

    #[test]
    fn truncations_of_fixture_b() {
        let c = builtin::s2xs4();
        assert_eq!(c.truncate_below(f64::INFINITY), c);
        let low = c.truncate_below(2.0);
        assert_eq!(names(&low), ["p0", "p2"]);
        assert_eq!(low.entries().len(), 1);
        assert_eq!(low.entries()[0].source, "p2");
        assert!(low.validate().is_ok());
        assert!(c.truncate_below(-1.0).is_empty());
    }

    #[test]
    fn quotients_of_fixture_c() {
        let c = builtin::s2xs4_sum();
        let q = c.quotient_above(2.06);
        let mut n = names(&q);
        n.sort();
        assert_eq!(n, ["p4_1", "p6"]);
        assert_eq!(q.entries().len(), 1);
        assert_eq!(q.ring().format(&q.entries()[0].coefficient), "a1");
        assert_eq!(c.quotient_above(f64::NEG_INFINITY), c);
        assert!(c.quotient_above(4.0).is_empty());
        assert!(q.validate().is_ok());
    }

    #[test]
    fn perturbation_bounds() {
        let c = builtin::fix_a();
        assert_eq!(c.perturb_values(0.0, 7), c);
        for seed in 0..20 {
            let p = c.perturb_values(0.05, seed);
            assert!(p.validate().is_ok());
            for (g, h) in c.generators().iter().zip(p.generators()) {
                assert!((g.value - h.value).abs() <= 0.05);
            }
        }
        assert_eq!(c.perturb_values(0.05, 3), c.perturb_values(0.05, 3));
    }

    #[test]
    fn perturbation_rescales_to_keep_monotonicity() {
        let c = FilteredComplex::plain(&[("a", 1, 0.001), ("b", 0, 0.0)], &[("a", "b")]).unwrap();
        for seed in 0..50 {
            assert!(c.perturb_values(1.0, seed).validate().is_ok());
        }
    }

    #[test]
    fn dual_of_fixture_a() {
        let d = builtin::fix_a().dualize().unwrap();
        let v = |n: &str| d.generator(n).unwrap().value;
        assert_eq!((v("a'"), v("b'"), v("c'")), (-2.0, -1.0, 0.0));
        let mut e: Vec<_> = d
            .entries()
            .iter()
            .map(|e| (e.source.as_str(), e.target.as_str()))
            .collect();
        e.sort();
        assert_eq!(e, [("b'", "a'"), ("c'", "a'")]);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn dual_is_an_involution() {
        let c = builtin::fix_a();
        let dd = c.dualize().unwrap().dualize().unwrap();
        let back = dd.renamed(|n| n.trim_end_matches('\'').to_string()).unwrap();
        assert_eq!(back.generators(), c.generators());
        assert_eq!(back.validate(), c.validate());
        assert!(builtin::s2xs4().dualize().is_err());
    }

    #[test]
    fn underlying_plain_keeps_unit_entries() {
        let c = builtin::s2xs4();
        assert!(c.underlying_plain().entries().is_empty());
        let a = builtin::fix_a();
        assert_eq!(a.underlying_plain(), a);
    }
}
