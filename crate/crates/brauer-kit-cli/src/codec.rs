//! JSON encoding of the exact types. Rationals travel as reduced "p/q"
//! strings ("p" when integral) so no value ever passes through a float;
//! integer matrix entries are plain JSON numbers with a decimal-string
//! fallback beyond the i64 range.

use std::fs;
use std::io::Read as _;
use std::str::FromStr;

use brauer_kit::cmfields::{AlgebraLattice, EtaleAlgebra};
use brauer_kit::invcoh::InvolutionModule;
use brauer_kit::torus::FormLattice;
use brauer_kit::{FinAbGroup, Int, IntMat, QMat, Rat, RationalTorus};
use serde_json::{json, Value};

use crate::commands::Failure;

/// Reads the argument as inline JSON when it looks like JSON, as standard
/// input for "-", and as a file path otherwise.
pub fn load_input(arg: &str) -> Result<Value, Failure> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
        buf
    } else if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Input(format!("reading {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))
}

pub fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, Failure> {
    v.get(name)
        .ok_or_else(|| Failure::Input(format!("missing field \"{name}\"")))
}

pub fn parse_usize(v: &Value, name: &str) -> Result<usize, Failure> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Failure::Input(format!("field \"{name}\" must be a non-negative integer")))
}

pub fn parse_int(v: &Value) -> Result<Int, Failure> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| Failure::Input(format!("integer out of range: {n}"))),
        Value::String(s) => {
            Int::from_str(s).map_err(|_| Failure::Input(format!("invalid integer \"{s}\"")))
        }
        other => Err(Failure::Input(format!("expected an integer, got {other}"))),
    }
}

pub fn parse_rat(v: &Value) -> Result<Rat, Failure> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rat::from(Int::from(x)))
            .ok_or_else(|| Failure::Input(format!("rational out of integer range: {n}"))),
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a, b),
                None => (s.as_str(), "1"),
            };
            let num = Int::from_str(num.trim())
                .map_err(|_| Failure::Input(format!("invalid rational \"{s}\"")))?;
            let den = Int::from_str(den.trim())
                .map_err(|_| Failure::Input(format!("invalid rational \"{s}\"")))?;
            if den == Int::from(0) {
                return Err(Failure::Input(format!("zero denominator in \"{s}\"")));
            }
            Ok(Rat::new(num, den))
        }
        other => Err(Failure::Input(format!("expected a rational, got {other}"))),
    }
}

fn rows_of(v: &Value) -> Result<&Vec<Value>, Failure> {
    v.as_array()
        .ok_or_else(|| Failure::Input(format!("expected a matrix (array of rows), got {v}")))
}

pub fn parse_int_matrix(v: &Value) -> Result<IntMat, Failure> {
    let rows = rows_of(v)?;
    if rows.is_empty() {
        return Err(Failure::Input("matrix must have at least one row".into()));
    }
    let mut data = Vec::new();
    let mut cols = None;
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| Failure::Input("matrix rows must be arrays".into()))?;
        match cols {
            None => cols = Some(entries.len()),
            Some(c) if c != entries.len() => {
                return Err(Failure::Input("matrix rows have unequal lengths".into()))
            }
            _ => {}
        }
        for e in entries {
            data.push(parse_int(e)?);
        }
    }
    let cols = cols.unwrap();
    if cols == 0 {
        return Err(Failure::Input("matrix rows must be non-empty".into()));
    }
    Ok(IntMat::from_flat(rows.len(), cols, data))
}

pub fn parse_rat_matrix(v: &Value) -> Result<QMat, Failure> {
    let rows = rows_of(v)?;
    if rows.is_empty() {
        return Err(Failure::Input("matrix must have at least one row".into()));
    }
    let mut parsed: Vec<Vec<Rat>> = Vec::new();
    for row in rows {
        parsed.push(parse_rat_vec(row)?);
        if parsed[0].len() != parsed.last().unwrap().len() {
            return Err(Failure::Input("matrix rows have unequal lengths".into()));
        }
    }
    if parsed[0].is_empty() {
        return Err(Failure::Input("matrix rows must be non-empty".into()));
    }
    let (r, c) = (parsed.len(), parsed[0].len());
    Ok(QMat::from_fn(r, c, |i, j| parsed[i][j].clone()))
}

pub fn parse_rat_vec(v: &Value) -> Result<Vec<Rat>, Failure> {
    v.as_array()
        .ok_or_else(|| Failure::Input(format!("expected an array of rationals, got {v}")))?
        .iter()
        .map(parse_rat)
        .collect()
}

pub fn int_value(i: &Int) -> Value {
    match i64::try_from(i) {
        Ok(x) => json!(x),
        Err(_) => json!(i.to_string()),
    }
}

pub fn int_vec_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn int_matrix_value(m: &IntMat) -> Value {
    Value::Array((0..m.rows()).map(|i| int_vec_value(m.row(i))).collect())
}

pub fn rat_vec_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| json!(r.to_string())).collect())
}

pub fn rat_matrix_value(m: &QMat) -> Value {
    Value::Array((0..m.rows()).map(|i| rat_vec_value(m.row(i))).collect())
}

pub fn group_value(g: &FinAbGroup) -> Value {
    let factors = int_vec_value(g.invariant_factors());
    if g.free_rank() == 0 {
        json!({ "invariant_factors": factors })
    } else {
        json!({ "invariant_factors": factors, "free_rank": g.free_rank() })
    }
}

/// "(a, b, ...)" with each coordinate in reduced form.
pub fn tuple_string(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn parse_torus(v: &Value) -> Result<RationalTorus, Failure> {
    let g = parse_usize(field(v, "g")?, "g")?;
    let j = parse_rat_matrix(field(v, "J")?)?;
    if j.rows() != 2 * g || j.cols() != 2 * g {
        return Err(Failure::Input(format!(
            "J must be {0} x {0} for g = {g}",
            2 * g
        )));
    }
    RationalTorus::new(j).map_err(Failure::precondition)
}

pub fn parse_form_lattice(v: &Value, span: bool) -> Result<FormLattice, Failure> {
    let n = parse_usize(field(v, "n")?, "n")?;
    let raw = field(v, "forms")?
        .as_array()
        .ok_or_else(|| Failure::Input("\"forms\" must be an array of matrices".into()))?;
    let forms: Vec<IntMat> = raw
        .iter()
        .map(parse_int_matrix)
        .collect::<Result<_, _>>()?;
    if span {
        FormLattice::span(n, &forms).map_err(Failure::precondition)
    } else {
        FormLattice::new(n, forms).map_err(Failure::precondition)
    }
}

pub fn parse_algebra(v: &Value) -> Result<EtaleAlgebra, Failure> {
    let dim = parse_usize(field(v, "dim")?, "dim")?;
    let raw = field(v, "mult_table")?
        .as_array()
        .ok_or_else(|| Failure::Input("\"mult_table\" must be an array of matrices".into()))?;
    if raw.len() != dim {
        return Err(Failure::Input(format!(
            "\"mult_table\" must hold {dim} matrices, one per basis element"
        )));
    }
    let table: Vec<QMat> = raw
        .iter()
        .map(parse_rat_matrix)
        .collect::<Result<_, _>>()?;
    let one = parse_rat_vec(field(v, "one")?)?;
    let conjugation = parse_rat_matrix(field(v, "conjugation")?)?;
    EtaleAlgebra::new(table, one, conjugation).map_err(Failure::precondition)
}

pub fn parse_algebra_lattice(v: &Value) -> Result<AlgebraLattice, Failure> {
    let algebra = parse_algebra(field(v, "algebra")?)?;
    let basis = parse_rat_matrix(field(v, "basis")?)?;
    if basis.cols() != algebra.dim() {
        return Err(Failure::Input(format!(
            "\"basis\" rows must have {} coordinates",
            algebra.dim()
        )));
    }
    AlgebraLattice::new(algebra, &basis).map_err(Failure::precondition)
}

pub fn parse_involution(v: &Value) -> Result<InvolutionModule, Failure> {
    let rank = parse_usize(field(v, "rank")?, "rank")?;
    let sigma = parse_int_matrix(field(v, "sigma")?)?;
    if sigma.rows() != rank || sigma.cols() != rank {
        return Err(Failure::Input(format!("\"sigma\" must be {rank} x {rank}")));
    }
    InvolutionModule::new(sigma).map_err(Failure::precondition)
}
