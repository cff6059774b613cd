//! The JSON complex file format.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "ring": "s2xs4",
//!   "generators": [["p0", 0, "0.0"], ["p2", 2, "1.9"]],
//!   "differential": [["p2", "p0", ["a"]]]
//! }
//! ```
//!
//! `ring` is either a built-in ring name or a table record
//! `{"basis": [[name, degree], ...], "truncation_degree": T,
//! "mult": [[left, right, [terms]]], "diff": [[element, [terms]]]}`;
//! it defaults to the trivial ring. Values are decimal strings.
//! Optional `morse_product` and `module_action` tables act on the
//! generators of the main complex (the Morse side) and of `floer`
//! (defaulting to the main complex).

use serde::{Deserialize, Serialize};

use crate::complex::{DifferentialEntry, FilteredComplex, Generator};
use crate::error::{Error, Result};
use crate::homology::ActionTable;
use crate::ring::{RingBasisElement, RingModel};

pub const FORMAT_VERSION: u32 = 1;

type Triple = (String, String, Vec<String>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingRecord {
    pub basis: Vec<(String, u32)>,
    pub truncation_degree: u32,
    #[serde(default)]
    pub mult: Vec<Triple>,
    #[serde(default)]
    pub diff: Vec<(String, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Builtin(String),
    Table(RingRecord),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlainRecord {
    pub generators: Vec<(String, i32, String)>,
    #[serde(default)]
    pub differential: Vec<Triple>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    pub generators: Vec<(String, i32, String)>,
    #[serde(default)]
    pub differential: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_decrease: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morse_product: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub module_action: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floer: Option<PlainRecord>,
}

/// A parsed file: the complex plus optional action data.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub complex: FilteredComplex,
    pub action: ActionTable,
    pub floer: Option<FilteredComplex>,
    /// Generator values exactly as written in the file.
    pub value_text: Vec<String>,
}

impl Document {
    pub fn new(complex: FilteredComplex) -> Self {
        let value_text = complex.generators().iter().map(|g| format_value(g.value)).collect();
        Self {
            complex,
            action: ActionTable::default(),
            floer: None,
            value_text,
        }
    }

    /// The Floer side of the action: `floer` when given, else the complex.
    pub fn floer_or_self(&self) -> &FilteredComplex {
        self.floer.as_ref().unwrap_or(&self.complex)
    }
}

/// Decimal text that parses back to the same binary64.
pub fn format_value(v: f64) -> String {
    let s = format!("{v}");
    if s.contains(['.', 'e', 'E', 'i', 'N']) {
        s
    } else {
        format!("{s}.0")
    }
}

fn parse_value(text: &str, field: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("{field}: `{text}` is not a decimal number")))?;
    if !v.is_finite() {
        return Err(Error::Malformed(format!("{field}: value must be finite")));
    }
    Ok(v)
}

fn at(field: String) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::Malformed(m) => Error::Malformed(format!("{field}: {m}")),
        other => Error::Malformed(format!("{field}: {other}")),
    }
}

fn build_ring(spec: &Option<RingSpec>) -> Result<RingModel> {
    match spec {
        None => Ok(RingModel::trivial()),
        Some(RingSpec::Builtin(name)) => RingModel::builtin(name).map_err(at("ring".into())),
        Some(RingSpec::Table(t)) => RingModel::new(
            t.basis
                .iter()
                .map(|(n, d)| RingBasisElement::new(n.clone(), *d))
                .collect(),
            t.truncation_degree,
            &t.mult,
            &t.diff,
        )
        .map_err(at("ring".into())),
    }
}

fn build_complex(
    ring: RingModel,
    generators: &[(String, i32, String)],
    differential: &[Triple],
    strict: bool,
    prefix: &str,
) -> Result<FilteredComplex> {
    let gens = generators
        .iter()
        .enumerate()
        .map(|(i, (n, d, v))| {
            Ok(Generator::new(
                n.clone(),
                *d,
                parse_value(v, &format!("{prefix}generators[{i}]"))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let entries = differential
        .iter()
        .enumerate()
        .map(|(i, (s, t, terms))| {
            Ok(DifferentialEntry {
                source: s.clone(),
                target: t.clone(),
                coefficient: ring.element(terms).map_err(at(format!("{prefix}differential[{i}]")))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FilteredComplex::new(ring, gens, entries, strict).map_err(at(format!("{prefix}differential")))
}

/// Parses file text. Syntax errors carry line and column; semantic errors
/// name the offending field.
pub fn parse(text: &str) -> Result<Document> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_file(&file)
}

pub fn from_file(file: &ComplexFile) -> Result<Document> {
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Malformed(format!(
            "format_version: unsupported version {}, expected {FORMAT_VERSION}",
            file.format_version
        )));
    }
    let ring = build_ring(&file.ring)?;
    let strict = file.strict_decrease.unwrap_or(true);
    let complex = build_complex(ring, &file.generators, &file.differential, strict, "")?;
    let floer = file
        .floer
        .as_ref()
        .map(|f| build_complex(RingModel::trivial(), &f.generators, &f.differential, strict, "floer."))
        .transpose()?;
    Ok(Document {
        complex,
        action: ActionTable {
            morse_product: file.morse_product.clone(),
            module_action: file.module_action.clone(),
        },
        floer,
        value_text: file.generators.iter().map(|g| g.2.clone()).collect(),
    })
}

fn plain_record(c: &FilteredComplex) -> (Vec<(String, i32, String)>, Vec<Triple>) {
    let ring = c.ring();
    let gens = c
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.degree, format_value(g.value)))
        .collect();
    let diff = c
        .entries()
        .iter()
        .map(|e| {
            let terms = e.coefficient.terms().map(|i| ring.name(i).to_string()).collect();
            (e.source.clone(), e.target.clone(), terms)
        })
        .collect();
    (gens, diff)
}

pub fn to_file(doc: &Document) -> ComplexFile {
    let c = &doc.complex;
    let ring = c.ring();
    let ring_spec = (!ring.is_trivial() || ring != &RingModel::trivial()).then(|| {
        RingSpec::Table(RingRecord {
            basis: ring.basis().iter().map(|b| (b.name.clone(), b.degree)).collect(),
            truncation_degree: ring.truncation_degree(),
            mult: ring
                .mult_entries()
                .map(|(i, j, e)| {
                    (
                        ring.name(i).to_string(),
                        ring.name(j).to_string(),
                        e.terms().map(|k| ring.name(k).to_string()).collect(),
                    )
                })
                .collect(),
            diff: ring
                .diff_entries()
                .map(|(i, e)| {
                    (
                        ring.name(i).to_string(),
                        e.terms().map(|k| ring.name(k).to_string()).collect(),
                    )
                })
                .collect(),
        })
    });
    let (generators, differential) = plain_record(c);
    ComplexFile {
        format_version: FORMAT_VERSION,
        ring: ring_spec,
        generators,
        differential,
        strict_decrease: (!c.strict_decrease()).then_some(false),
        morse_product: doc.action.morse_product.clone(),
        module_action: doc.action.module_action.clone(),
        floer: doc.floer.as_ref().map(|f| {
            let (generators, differential) = plain_record(f);
            PlainRecord {
                generators,
                differential,
            }
        }),
    }
}

pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(doc)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn load(path: &std::path::Path) -> Result<Document> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}
