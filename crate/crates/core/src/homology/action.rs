use std::collections::BTreeMap;

use serde::Serialize;

use super::{FilteredHomology, HomologyClass};
use crate::complex::FilteredComplex;
use crate::error::Result;
use crate::gf2::Gf2Vector;
use crate::validation::{ValidationReport, Violation};

/// Classes per degree above which only basis classes are checked.
const ENUMERATION_RANK: usize = 8;

/// Chain-level intersection product `p·q` on the Morse side and module
/// action `p∗x` of Morse generators on Floer generators. Each entry is
/// `(left, right, output terms)`; missing pairs are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ActionTable {
    pub morse_product: Vec<(String, String, Vec<String>)>,
    pub module_action: Vec<(String, String, Vec<String>)>,
}

impl ActionTable {
    pub fn is_empty(&self) -> bool {
        self.morse_product.is_empty() && self.module_action.is_empty()
    }
}

/// A bilinear map tabulated on total basis indices.
struct Bilinear {
    out_len: usize,
    table: BTreeMap<(usize, usize), Gf2Vector>,
}

impl Bilinear {
    fn apply(&self, u: &Gf2Vector, v: &Gf2Vector) -> Gf2Vector {
        let mut out = Gf2Vector::zeros(self.out_len);
        for i in u.ones() {
            for j in v.ones() {
                if let Some(w) = self.table.get(&(i, j)) {
                    out.add_assign(w);
                }
            }
        }
        out
    }
}

struct Prepared {
    morse: FilteredHomology,
    floer: FilteredHomology,
    product: Bilinear,
    action: Bilinear,
    top_degree: i32,
    /// Total index of the unique top-degree Morse generator.
    top: Option<usize>,
}

/// Total index of a named generator of a plain complex.
fn index(h: &FilteredHomology, name: &str) -> Result<usize> {
    let g = h.complex().index_of(name)?;
    Ok(h.total().position(g, 0).expect("plain complexes have one ring element"))
}

fn prepare(
    morse: &FilteredComplex,
    floer: &FilteredComplex,
    table: &ActionTable,
    report: &mut ValidationReport,
) -> Result<Option<Prepared>> {
    for (which, c) in [("Morse", morse), ("Floer", floer)] {
        if !c.is_plain() {
            report.push(Violation::PlainComplexRequired { which: which.into() });
        }
    }
    if !report.is_ok() {
        return Ok(None);
    }
    let hm = FilteredHomology::new(morse)?;
    let hf = FilteredHomology::new(floer)?;
    let n = morse.max_degree().unwrap_or(0);

    let mut tabulate = |name: &str,
                        entries: &[(String, String, Vec<String>)],
                        right: &FilteredHomology,
                        out: &FilteredHomology|
     -> Result<Bilinear> {
        let mut table = BTreeMap::new();
        for (l, r, terms) in entries {
            let (il, ir) = (index(&hm, l)?, index(right, r)?);
            let mut v = Gf2Vector::zeros(out.total().len());
            let want = hm.total().basis()[il].degree + right.total().basis()[ir].degree - n;
            for t in terms {
                let k = index(out, t)?;
                v.flip(k);
                let got = out.total().basis()[k].degree;
                if got != want {
                    report.push(Violation::TableDegree {
                        table: name.into(),
                        left: l.clone(),
                        right: r.clone(),
                        detail: format!("output {t} has degree {got}, expected {want}"),
                    });
                }
            }
            if let Some(prev) = table.get_mut(&(il, ir)) {
                Gf2Vector::add_assign(prev, &v);
            } else {
                table.insert((il, ir), v);
            }
        }
        Ok(Bilinear {
            out_len: out.total().len(),
            table,
        })
    };
    let product = tabulate("morse_product", &table.morse_product, &hm, &hm)?;
    let action = tabulate("module_action", &table.module_action, &hf, &hf)?;

    let tops: Vec<usize> = morse
        .generators()
        .iter()
        .filter(|g| g.degree == n)
        .map(|g| index(&hm, &g.name))
        .collect::<Result<_>>()?;
    Ok(Some(Prepared {
        morse: hm,
        floer: hf,
        product,
        action,
        top_degree: n,
        top: (tops.len() == 1).then(|| tops[0]),
    }))
}

/// Checks the Leibniz rules for `∗` and `·`, the chain-level unit law for
/// the unique top Morse generator, and associativity in homology.
pub fn validate_action(
    morse: &FilteredComplex,
    floer: &FilteredComplex,
    table: &ActionTable,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    if let Some(p) = prepare(morse, floer, table, &mut report)? {
        check_action(&p, &mut report);
    }
    Ok(report)
}

fn check_action(p: &Prepared, report: &mut ValidationReport) {
    let (tm, tf) = (p.morse.total(), p.floer.total());
    for i in 0..tm.len() {
        let ei = Gf2Vector::unit(tm.len(), i);
        let di = tm.apply(&ei);
        for j in 0..tf.len() {
            let ej = Gf2Vector::unit(tf.len(), j);
            let mut r = tf.apply(&p.action.apply(&ei, &ej));
            r.add_assign(&p.action.apply(&di, &ej));
            r.add_assign(&p.action.apply(&ei, &tf.apply(&ej)));
            if !r.is_zero() {
                report.push(Violation::ActionLeibniz {
                    morse: tm.label(i),
                    floer: tf.label(j),
                    residual: tf.chain(&r).to_string(),
                });
            }
        }
        for k in 0..tm.len() {
            let ek = Gf2Vector::unit(tm.len(), k);
            let mut r = tm.apply(&p.product.apply(&ei, &ek));
            r.add_assign(&p.product.apply(&di, &ek));
            r.add_assign(&p.product.apply(&ei, &tm.apply(&ek)));
            if !r.is_zero() {
                report.push(Violation::ProductLeibniz {
                    left: tm.label(i),
                    right: tm.label(k),
                    residual: tm.chain(&r).to_string(),
                });
            }
        }
    }

    match p.top {
        Some(m) => {
            let em = Gf2Vector::unit(tm.len(), m);
            for j in 0..tf.len() {
                let ej = Gf2Vector::unit(tf.len(), j);
                let out = p.action.apply(&em, &ej);
                if out != ej {
                    report.push(Violation::ActionUnit {
                        morse: tm.label(m),
                        other: tf.label(j),
                        detail: format!("{}*{} = {}", tm.label(m), tf.label(j), tf.chain(&out)),
                    });
                }
            }
            for i in 0..tm.len() {
                let ei = Gf2Vector::unit(tm.len(), i);
                let out = p.product.apply(&ei, &em);
                if out != ei {
                    report.push(Violation::ActionUnit {
                        morse: tm.label(m),
                        other: tm.label(i),
                        detail: format!("{}.{} = {}", tm.label(i), tm.label(m), tm.chain(&out)),
                    });
                }
            }
        }
        None => report.note("top Morse degree has several generators; unit law skipped"),
    }

    let morse_classes = p.morse.all_classes();
    for alpha in &morse_classes {
        for beta in &morse_classes {
            let ab = p.product.apply(&alpha.vector, &beta.vector);
            for a in p.floer.all_classes() {
                let mut diff = p.action.apply(&ab, &a.vector);
                diff.add_assign(&p.action.apply(&alpha.vector, &p.action.apply(&beta.vector, &a.vector)));
                if !p.floer.is_boundary(&diff) {
                    report.push(Violation::ActionAssociativity {
                        alpha: alpha.representative.to_string(),
                        beta: beta.representative.to_string(),
                        floer_class: a.representative.to_string(),
                    });
                }
            }
        }
    }
}

/// Nonzero classes per degree: all of them when few, otherwise a basis.
fn classes_to_check(h: &FilteredHomology, report: &mut ValidationReport) -> Vec<HomologyClass> {
    let mut out = Vec::new();
    for &d in h.ranks().keys() {
        match h.enumerate_classes(d, ENUMERATION_RANK) {
            Some(all) => out.extend(all),
            None => {
                report.note(format!("degree {d}: rank above {ENUMERATION_RANK}, basis classes only"));
                out.extend(h.classes(d));
            }
        }
    }
    out
}

/// Under the hypothesis that every non-top action lowers value by at least
/// `delta`, checks `c(α∗β) ≤ c(β) - δ` for non-top Morse classes α and the
/// bounds `0 ≤ c(α) ≤ c([top])` on the Floer side.
pub fn product_inequality(
    morse: &FilteredComplex,
    floer: &FilteredComplex,
    table: &ActionTable,
    delta: f64,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let Some(p) = prepare(morse, floer, table, &mut report)? else {
        return Ok(report);
    };
    check_action(&p, &mut report);
    if !report.is_ok() {
        report.note("action table invalid; inequalities skipped");
        return Ok(report);
    }
    let (tm, tf) = (p.morse.total(), p.floer.total());

    for (&(i, j), out) in &p.action.table {
        if tm.basis()[i].degree >= p.top_degree {
            continue;
        }
        let x = tf.basis()[j].value;
        for k in out.ones() {
            let y = tf.basis()[k].value;
            if y > x - delta {
                report.push(Violation::DeltaHypothesis {
                    morse: tm.label(i),
                    floer: tf.label(j),
                    output: tf.label(k),
                    drop: x - y,
                    delta,
                });
            }
        }
    }
    if !report.is_ok() {
        report.note("delta hypothesis fails; inequalities skipped");
        return Ok(report);
    }

    let s1 = p.floer.normalization();
    let c = |sigma: f64| s1.map_or(sigma, |s| sigma - s);
    if s1.is_none() {
        report.note("dim H_0 != 1 on the Floer side; relative values compared");
    }
    let floer_classes = classes_to_check(&p.floer, &mut report);
    let morse_classes: Vec<_> = classes_to_check(&p.morse, &mut report)
        .into_iter()
        .filter(|a| a.degree < p.top_degree)
        .collect();
    for alpha in &morse_classes {
        for beta in &floer_classes {
            let image = p.action.apply(&alpha.vector, &beta.vector);
            if p.floer.is_boundary(&image) {
                continue;
            }
            let lhs = c(p.floer.sigma_of(&image)?);
            let rhs = c(p.floer.sigma(beta)?) - delta;
            if lhs > rhs {
                report.push(Violation::ProductInequality {
                    alpha: alpha.representative.to_string(),
                    beta: beta.representative.to_string(),
                    lhs,
                    rhs,
                });
            }
        }
    }

    match (s1, top_class(&p.floer)) {
        (Some(_), Some(top)) => {
            let c_top = c(p.floer.sigma(&top)?);
            for a in &floer_classes {
                let value = c(p.floer.sigma(a)?);
                if !(0.0..=c_top).contains(&value) {
                    report.push(Violation::AbsoluteBounds {
                        class: a.representative.to_string(),
                        value,
                        top: c_top,
                    });
                }
            }
        }
        _ => report.note("no normalized top class; absolute bounds skipped"),
    }
    Ok(report)
}

/// The generator of the top nonzero homology degree, if one-dimensional.
fn top_class(h: &FilteredHomology) -> Option<HomologyClass> {
    let (&d, _) = h.ranks().iter().rev().find(|(_, &r)| r > 0)?;
    let mut classes = h.classes(d);
    (classes.len() == 1).then(|| classes.remove(0))
}

/// Longest chain `α_1∗(α_2∗(…∗(α_k∗[top])))` of non-top Morse basis
/// classes with nonzero result, and the telescoped bound `c([top]) ≥ kδ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CupLength {
    pub length: usize,
    pub chain: Vec<String>,
    pub top: f64,
    pub bound: f64,
}

impl CupLength {
    pub fn holds(&self) -> bool {
        self.top >= self.bound
    }

    pub fn violation(&self) -> Option<Violation> {
        (!self.holds()).then_some(Violation::CupLength {
            length: self.length,
            top: self.top,
            bound: self.bound,
        })
    }
}

pub fn cup_length(
    morse: &FilteredComplex,
    floer: &FilteredComplex,
    table: &ActionTable,
    delta: f64,
) -> Result<Option<CupLength>> {
    let mut report = ValidationReport::new();
    let Some(p) = prepare(morse, floer, table, &mut report)? else {
        return Ok(None);
    };
    let Some(top) = top_class(&p.floer) else {
        return Ok(None);
    };
    let Some(s1) = p.floer.normalization() else {
        return Ok(None);
    };
    let alphas: Vec<_> = p
        .morse
        .all_classes()
        .into_iter()
        .filter(|a| a.degree < p.top_degree)
        .collect();

    fn longest(p: &Prepared, alphas: &[HomologyClass], v: &Gf2Vector, depth: usize) -> Vec<usize> {
        let mut best = Vec::new();
        if depth > alphas.len() + p.top_degree.max(0) as usize {
            return best;
        }
        for (i, a) in alphas.iter().enumerate() {
            let w = p.action.apply(&a.vector, v);
            if p.floer.is_boundary(&w) {
                continue;
            }
            let mut rest = longest(p, alphas, &w, depth + 1);
            if rest.len() + 1 > best.len() {
                rest.insert(0, i);
                best = rest;
            }
        }
        best
    }

    let chain = longest(&p, &alphas, &top.vector, 0);
    let c_top = p.floer.sigma(&top)? - s1;
    Ok(Some(CupLength {
        length: chain.len(),
        chain: chain.iter().map(|&i| alphas[i].representative.to_string()).collect(),
        top: c_top,
        bound: chain.len() as f64 * delta,
    }))
}
