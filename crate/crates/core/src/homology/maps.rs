use std::collections::BTreeMap;

use super::FilteredHomology;
use crate::complex::{ChainElement, FilteredComplex};
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::ring::RingElement;
use crate::validation::{ValidationReport, Violation};

/// Checks that `map` (generator name to chain of `dst`, extended linearly
/// over the ring) is a chain map that raises values by at most `shift`, and
/// that every homology basis class of `src` with nonzero image satisfies
/// `σ_dst(map(α)) ≤ σ_src(α) + shift`.
pub fn check_filtered_map(
    src: &FilteredComplex,
    dst: &FilteredComplex,
    map: &BTreeMap<String, ChainElement>,
    shift: f64,
) -> Result<ValidationReport> {
    if src.ring() != dst.ring() {
        return Err(Error::Unsupported("maps between complexes over different rings".into()));
    }
    for name in map.keys() {
        src.index_of(name)?;
    }
    let hs = FilteredHomology::new(src)?;
    let hd = FilteredHomology::new(dst)?;
    let (ts, td) = (hs.total(), hd.total());
    let ring = src.ring();
    let mut report = ValidationReport::new();

    // image of each generator as (ring index, dst generator index) terms
    let mut images: Vec<Vec<(usize, usize)>> = vec![Vec::new(); src.len()];
    for (name, chain) in map {
        let g = src.index_of(name)?;
        let source = &src.generators()[g];
        for t in chain.terms() {
            let h = dst.index_of(&t.generator)?;
            let r = ring.index_of(&t.ring)?;
            images[g].push((r, h));
            let target = &dst.generators()[h];
            if target.value > source.value + shift {
                report.push(Violation::MapValueShift {
                    source: source.name.clone(),
                    target: t.to_string(),
                    source_value: source.value,
                    target_value: target.value,
                    shift,
                });
            }
        }
    }

    let apply = |v: &Gf2Vector| -> Gf2Vector {
        let mut out = Gf2Vector::zeros(td.len());
        for i in v.ones() {
            let b = &ts.basis()[i];
            let e = RingElement::basis(ring.len(), b.ring);
            for &(r, h) in &images[b.generator] {
                let coeff = RingElement::basis(ring.len(), r);
                for q in ring.mul_unchecked(&e, &coeff).terms() {
                    if let Some(k) = td.position(h, q) {
                        out.flip(k);
                    }
                }
            }
        }
        out
    };

    let mut commutes = true;
    for j in 0..ts.len() {
        let e = Gf2Vector::unit(ts.len(), j);
        let mut residual = td.apply(&apply(&e));
        residual.add_assign(&apply(&ts.apply(&e)));
        if !residual.is_zero() {
            commutes = false;
            report.push(Violation::ChainMapCommutation {
                element: ts.label(j),
                residual: td.chain(&residual).to_string(),
            });
        }
    }
    if !commutes {
        report.note("spectral shift check skipped");
        return Ok(report);
    }

    for class in hs.all_classes() {
        let image = apply(&class.vector);
        if hd.is_boundary(&image) {
            continue;
        }
        let before = hs.sigma(&class)?;
        let after = hd.sigma_of(&image)?;
        if after > before + shift {
            report.push(Violation::MapSpectralShift {
                class: class.representative.to_string(),
                source_sigma: before,
                target_sigma: after,
                shift,
            });
        }
    }
    Ok(report)
}
