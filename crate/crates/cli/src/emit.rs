//! Series and report output in JSON, CSV and plain text, plus the JSON reader
//! used to round-trip series.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use vertexlab::algebra::{
    parse_rational, Grading, LaurentPoly, Monomial, Rational, RationalFunction, TruncatedSeries, VarTable, MAX_VARS,
};
use vertexlab::report::Report;

pub const SERIES_SCHEMA: &str = "vertexlab.series/1";
pub const REPORT_SCHEMA: &str = "vertexlab.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct VarJson {
    pub name: String,
    pub counting: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct GradingJson {
    pub weights: Vec<i64>,
    /// Doubled units, like the exponents.
    pub bound: i64,
    pub floor: i64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyTermJson {
    pub exponents: Vec<i32>,
    pub coefficient: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct FactorJson {
    pub exponents: Vec<i32>,
    pub multiplicity: u32,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub monomial: String,
    /// Doubled exponents, one per variable.
    pub exponents: Vec<i32>,
    pub coefficient: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<Vec<PolyTermJson>>,
    /// `∏ (1 - w)^multiplicity`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<FactorJson>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SeriesJson {
    pub schema: String,
    pub vars: Vec<VarJson>,
    pub gradings: Vec<GradingJson>,
    pub terms: Vec<TermJson>,
}

/// Coefficients the emitters know how to write and read back.
pub trait CoefIo: vertexlab::algebra::Coef {
    fn canonical(&self, vars: &VarTable) -> String;
    fn structured(&self, n: usize) -> (Option<Vec<PolyTermJson>>, Option<Vec<FactorJson>>);
    fn read(t: &TermJson) -> Result<Self, String>;
}

fn exps(m: &Monomial, n: usize) -> Vec<i32> {
    m.0[..n].to_vec()
}

fn mono(e: &[i32]) -> Result<Monomial, String> {
    if e.len() > MAX_VARS {
        return Err(format!("{} exponents, at most {} allowed", e.len(), MAX_VARS));
    }
    let mut m = Monomial::ONE;
    m.0[..e.len()].copy_from_slice(e);
    Ok(m)
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("bad rational {:?}", s))
}

fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl CoefIo for Rational {
    fn canonical(&self, _: &VarTable) -> String {
        rational_string(self)
    }

    fn structured(&self, _: usize) -> (Option<Vec<PolyTermJson>>, Option<Vec<FactorJson>>) {
        (None, None)
    }

    fn read(t: &TermJson) -> Result<Self, String> {
        rational(&t.coefficient)
    }
}

impl CoefIo for RationalFunction {
    fn canonical(&self, vars: &VarTable) -> String {
        self.fmt_with(vars)
    }

    fn structured(&self, n: usize) -> (Option<Vec<PolyTermJson>>, Option<Vec<FactorJson>>) {
        let mut keys: Vec<(&Monomial, &Rational)> = self.numerator().terms().collect();
        keys.sort_by_key(|(m, _)| m.grlex_key());
        let num = keys.into_iter().map(|(m, c)| PolyTermJson { exponents: exps(m, n), coefficient: rational_string(c) }).collect();
        let den = self.denominator().iter().map(|(w, &k)| FactorJson { exponents: exps(w, n), multiplicity: k }).collect();
        (Some(num), Some(den))
    }

    fn read(t: &TermJson) -> Result<Self, String> {
        let num = t.numerator.as_ref().ok_or("rational-function term without numerator")?;
        let mut p = LaurentPoly::zero();
        for nt in num {
            p.add_term(mono(&nt.exponents)?, rational(&nt.coefficient)?);
        }
        let mut factors = Vec::new();
        for f in t.denominator.as_deref().unwrap_or(&[]) {
            let w = mono(&f.exponents)?;
            factors.extend(std::iter::repeat_n(w, f.multiplicity as usize));
        }
        RationalFunction::from_parts(p, &factors).map_err(|e| e.to_string())
    }
}

pub fn series_json<C: CoefIo>(s: &TruncatedSeries<C>, vars: &VarTable) -> SeriesJson {
    let n = vars.len();
    let terms = s
        .sorted_keys()
        .into_iter()
        .map(|m| {
            let c = s.coeff(&m);
            let (numerator, denominator) = c.structured(n);
            TermJson { monomial: m.fmt_with(vars), exponents: exps(&m, n), coefficient: c.canonical(vars), numerator, denominator }
        })
        .collect();
    SeriesJson {
        schema: SERIES_SCHEMA.to_string(),
        vars: (0..n).map(|i| VarJson { name: vars.name(i).to_string(), counting: vars.is_counting(i) }).collect(),
        gradings: s
            .gradings()
            .iter()
            .map(|g| GradingJson { weights: g.weights[..n].to_vec(), bound: g.bound, floor: g.floor })
            .collect(),
        terms,
    }
}

pub fn read_series<C: CoefIo>(text: &str) -> Result<TruncatedSeries<C>, String> {
    let j: SeriesJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if j.schema != SERIES_SCHEMA {
        return Err(format!("unknown schema {}", j.schema));
    }
    let mut gradings = Vec::new();
    for g in j.gradings {
        let mut weights = [0; MAX_VARS];
        if g.weights.len() > MAX_VARS {
            return Err(String::from("too many grading weights"));
        }
        weights[..g.weights.len()].copy_from_slice(&g.weights);
        gradings.push(Grading { weights, bound: g.bound, floor: g.floor });
    }
    let mut terms = BTreeMap::new();
    for t in j.terms.iter() {
        terms.insert(mono(&t.exponents)?, C::read(t)?);
    }
    Ok(TruncatedSeries::from_raw(terms, gradings))
}

fn csv_text(rows: impl IntoIterator<Item = Vec<String>>, header: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn emit_series<C: CoefIo>(s: &TruncatedSeries<C>, vars: &VarTable, f: Format) -> String {
    match f {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&series_json(s, vars)).expect("serializable");
            t.push('\n');
            t
        }
        Format::Csv => csv_text(
            s.sorted_keys().into_iter().map(|m| vec![m.fmt_with(vars), s.coeff(&m).canonical(vars)]),
            &["monomial", "coefficient"],
        ),
        Format::Plain => {
            let mut out = String::from("monomial\tcoefficient\n");
            out.push_str(&s.fmt_with(vars));
            out
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub at: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: String,
    pub command: String,
    pub status: String,
    pub name: String,
    pub checked: usize,
    pub orders: BTreeMap<String, serde_json::Value>,
    pub witness: Option<WitnessJson>,
    pub notes: Vec<String>,
}

pub fn emit_report(r: &Report, command: &str, orders: BTreeMap<String, serde_json::Value>, f: Format) -> String {
    let status = if r.passed { "pass" } else { "fail" };
    match f {
        Format::Json => {
            let j = ReportJson {
                schema: REPORT_SCHEMA.to_string(),
                command: command.to_string(),
                status: status.to_string(),
                name: r.name.clone(),
                checked: r.checked,
                orders,
                witness: r.witness.as_ref().map(|w| WitnessJson { at: w.at.clone(), left: w.left.clone(), right: w.right.clone() }),
                notes: r.notes.clone(),
            };
            let mut t = serde_json::to_string_pretty(&j).expect("serializable");
            t.push('\n');
            t
        }
        Format::Csv => {
            let w = r.witness.as_ref();
            csv_text(
                [vec![
                    command.to_string(),
                    status.to_string(),
                    r.checked.to_string(),
                    w.map(|w| w.at.clone()).unwrap_or_default(),
                    w.map(|w| w.left.clone()).unwrap_or_default(),
                    w.map(|w| w.right.clone()).unwrap_or_default(),
                ]],
                &["command", "status", "checked", "at", "left", "right"],
            )
        }
        Format::Plain => format!("{}\n", r),
    }
}
