use super::{FilteredHomology, ORACLE_CAP};
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::validation::{ValidationReport, Violation};

/// Compares spectral numbers of a plain complex with those of its dual:
/// in each degree `k` the multiset of `σ` over the persistence basis must
/// equal the negated multiset of the dual in degree `n - k`. When both
/// complexes are within the oracle cap every basis value is also confirmed
/// by enumeration.
pub fn check_duality(c: &FilteredComplex) -> Result<ValidationReport> {
    if !c.is_plain() {
        return Err(Error::Unsupported(
            "duality is implemented for complexes over the trivial ring only".into(),
        ));
    }
    let mut report = ValidationReport::new();
    let n = c.max_degree().unwrap_or(0);
    let h = FilteredHomology::new(c)?;
    let dual = c.dualize()?;
    let hd = FilteredHomology::new(&dual)?;

    for k in c.min_degree().unwrap_or(0)..=n {
        if h.rank(k) != h.rank(n - k) {
            report.note(format!(
                "dim H_{k} = {} but dim H_{} = {}; not duality shaped, check skipped",
                h.rank(k),
                n - k,
                h.rank(n - k)
            ));
            return Ok(report);
        }
    }

    let with_oracle = h.total().len() <= ORACLE_CAP;
    if !with_oracle {
        report.note("complex above the oracle cap; enumeration cross-check skipped");
    }
    let sigmas = |h: &FilteredHomology, degree: i32, report: &mut ValidationReport| -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for class in h.classes(degree) {
            let fast = h.sigma(&class)?;
            if with_oracle {
                let oracle = h.sigma_oracle(&class)?;
                if oracle != fast {
                    report.push(Violation::OracleMismatch {
                        class: class.representative.to_string(),
                        fast,
                        oracle,
                    });
                }
            }
            out.push(fast);
        }
        out.sort_by(f64::total_cmp);
        Ok(out)
    };

    for k in h.ranks().keys().copied() {
        let ours = sigmas(&h, k, &mut report)?;
        let mut theirs: Vec<f64> = sigmas(&hd, n - k, &mut report)?.into_iter().map(|s| -s).collect();
        theirs.sort_by(f64::total_cmp);
        if ours != theirs {
            report.push(Violation::Duality {
                degree: k,
                detail: format!("sigma {ours:?} vs negated dual sigma {theirs:?}"),
            });
        }
    }
    Ok(report)
}
