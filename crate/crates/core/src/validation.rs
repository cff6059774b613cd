use std::fmt;

use serde::Serialize;

/// A single failed check, carrying the witness that exhibits it.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    RingUnit {
        element: String,
        detail: String,
    },
    RingMissingUnit,
    RingElementDegree {
        element: String,
        degree: u32,
        truncation: u32,
    },
    RingProductDegree {
        left: String,
        right: String,
        detail: String,
    },
    RingDifferentialDegree {
        element: String,
        detail: String,
    },
    RingDifferentialSquare {
        element: String,
        residual: String,
    },
    RingAssociativity {
        x: String,
        y: String,
        z: String,
        residual: String,
    },
    RingLeibniz {
        x: String,
        y: String,
        residual: String,
    },
    EntryDegree {
        source: String,
        target: String,
        detail: String,
    },
    ValueMonotonicity {
        source: String,
        target: String,
        source_value: f64,
        target_value: f64,
    },
    Flatness {
        source: String,
        target: String,
        residual: String,
    },
    PlainComplexRequired {
        which: String,
    },
    TableDegree {
        table: String,
        left: String,
        right: String,
        detail: String,
    },
    ActionLeibniz {
        morse: String,
        floer: String,
        residual: String,
    },
    ProductLeibniz {
        left: String,
        right: String,
        residual: String,
    },
    ActionUnit {
        morse: String,
        other: String,
        detail: String,
    },
    ActionAssociativity {
        alpha: String,
        beta: String,
        floer_class: String,
    },
    ChainMapCommutation {
        element: String,
        residual: String,
    },
    MapValueShift {
        source: String,
        target: String,
        source_value: f64,
        target_value: f64,
        shift: f64,
    },
    MapSpectralShift {
        class: String,
        source_sigma: f64,
        target_sigma: f64,
        shift: f64,
    },
    DeltaHypothesis {
        morse: String,
        floer: String,
        output: String,
        drop: f64,
        delta: f64,
    },
    ProductInequality {
        alpha: String,
        beta: String,
        lhs: f64,
        rhs: f64,
    },
    AbsoluteBounds {
        class: String,
        value: f64,
        top: f64,
    },
    CupLength {
        length: usize,
        top: f64,
        bound: f64,
    },
    Duality {
        degree: i32,
        detail: String,
    },
    OracleMismatch {
        class: String,
        fast: f64,
        oracle: f64,
    },
    GapOrdering {
        page: u32,
        source: String,
        target: String,
        source_tilde: f64,
        target_tilde: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            RingUnit { element, detail } => write!(f, "unit law fails for `{element}`: {detail}"),
            RingMissingUnit => write!(f, "ring has no degree-0 element named `1`"),
            RingElementDegree {
                element,
                degree,
                truncation,
            } => write!(
                f,
                "ring element `{element}` has degree {degree} above the truncation degree {truncation}"
            ),
            RingProductDegree { left, right, detail } => {
                write!(f, "product `{left}`*`{right}` breaks degree additivity: {detail}")
            }
            RingDifferentialDegree { element, detail } => {
                write!(f, "differential of `{element}` does not lower degree by one: {detail}")
            }
            RingDifferentialSquare { element, residual } => {
                write!(f, "d(d(`{element}`)) = {residual}, expected 0")
            }
            RingAssociativity { x, y, z, residual } => {
                write!(f, "({x}{y}){z} + {x}({y}{z}) = {residual}, expected 0")
            }
            RingLeibniz { x, y, residual } => {
                write!(f, "Leibniz rule fails on ({x}, {y}): residual {residual}")
            }
            EntryDegree { source, target, detail } => {
                write!(f, "entry {source} -> {target}: {detail}")
            }
            ValueMonotonicity {
                source,
                target,
                source_value,
                target_value,
            } => write!(
                f,
                "entry {source} -> {target} does not decrease value ({source_value} -> {target_value})"
            ),
            Flatness {
                source,
                target,
                residual,
            } => write!(
                f,
                "Maurer-Cartan residual at ({source}, {target}) is {residual}, expected 0"
            ),
            PlainComplexRequired { which } => {
                write!(f, "{which} complex must use the trivial ring")
            }
            TableDegree {
                table,
                left,
                right,
                detail,
            } => {
                write!(f, "{table} entry ({left}, {right}): {detail}")
            }
            ActionLeibniz { morse, floer, residual } => write!(
                f,
                "d({morse}*{floer}) + (d{morse})*{floer} + {morse}*(d{floer}) = {residual}, expected 0"
            ),
            ProductLeibniz { left, right, residual } => write!(
                f,
                "d({left}.{right}) + (d{left}).{right} + {left}.(d{right}) = {residual}, expected 0"
            ),
            ActionUnit { morse, other, detail } => {
                write!(f, "unit law fails for {morse} on {other}: {detail}")
            }
            ActionAssociativity {
                alpha,
                beta,
                floer_class,
            } => write!(
                f,
                "({alpha}.{beta})*{floer_class} and {alpha}*({beta}*{floer_class}) differ in homology"
            ),
            ChainMapCommutation { element, residual } => {
                write!(f, "map does not commute with d on {element}: residual {residual}")
            }
            MapValueShift {
                source,
                target,
                source_value,
                target_value,
                shift,
            } => write!(
                f,
                "{source} ({source_value}) maps to {target} ({target_value}) beyond shift {shift}"
            ),
            MapSpectralShift {
                class,
                source_sigma,
                target_sigma,
                shift,
            } => write!(
                f,
                "class {class}: sigma after map {target_sigma} exceeds {source_sigma} + {shift}"
            ),
            DeltaHypothesis {
                morse,
                floer,
                output,
                drop,
                delta,
            } => write!(
                f,
                "{morse}*{floer} contains {output} with value drop {drop} < delta {delta}"
            ),
            ProductInequality { alpha, beta, lhs, rhs } => {
                write!(f, "c({alpha}*{beta}) = {lhs} exceeds c({beta}) - delta = {rhs}")
            }
            AbsoluteBounds { class, value, top } => {
                write!(f, "c({class}) = {value} is outside [0, c(top) = {top}]")
            }
            CupLength { length, top, bound } => write!(f, "chain of length {length}: c(top) = {top} is below {bound}"),
            Duality { degree, detail } => write!(f, "duality fails in degree {degree}: {detail}"),
            OracleMismatch { class, fast, oracle } => {
                write!(f, "class {class}: reduction gives {fast}, enumeration gives {oracle}")
            }
            GapOrdering {
                page,
                source,
                target,
                source_tilde,
                target_tilde,
            } => write!(
                f,
                "page {page}: d({source}) = {target} but tilde values {source_tilde} < {target_tilde}"
            ),
        }
    }
}

/// Collected violations plus informational notes (e.g. skipped checks).
/// An empty violation list means every check passed.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "ok")?;
        }
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
