//! Canonical JSON dumps of built algebras: basis labels, unit, generator
//! images and the nonzero structure constants, with the parameters needed
//! to re-derive the classification. Keys are sorted and coefficients are
//! rendered field elements, so equal builds give byte-identical files.

use bmw_core::presentation::{
    BuildReport, CyclotomicAlgebra, PresentationConfig, SparseVec, StructureAlgebra, TripleScalar, Variant,
    YOrientation,
};
use bmw_core::{Field, FieldDescriptor};
use serde_json::{json, Value};

use crate::error::{Result, WorkbenchError};
use crate::params::{input_from_json, params_json, ParamInput};

pub const FORMAT: &str = "bmw-dump/1";

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Bmw => "bmw",
        Variant::ArikiKoike => "ariki-koike",
    }
}

pub fn parse_variant(s: &str) -> Result<Variant> {
    match s {
        "bmw" => Ok(Variant::Bmw),
        "ariki-koike" | "ak" => Ok(Variant::ArikiKoike),
        _ => Err(WorkbenchError::invalid(format!(
            "unknown variant {s:?}; expected bmw or ariki-koike"
        ))),
    }
}

pub fn config_json(c: PresentationConfig) -> Value {
    let y = match c.y {
        YOrientation::X => "x",
        YOrientation::XInverse => "x-inverse",
    };
    let triple = match c.triple {
        TripleScalar::RhoInverse => "rho-inverse",
        TripleScalar::Rho => "rho",
    };
    json!({ "y": y, "triple": triple })
}

fn config_from_json(v: &Value) -> Result<PresentationConfig> {
    let y = match v.get("y").and_then(Value::as_str) {
        Some("x") => YOrientation::X,
        Some("x-inverse") => YOrientation::XInverse,
        _ => return Err(corrupt("config.y")),
    };
    let triple = match v.get("triple").and_then(Value::as_str) {
        Some("rho-inverse") => TripleScalar::RhoInverse,
        Some("rho") => TripleScalar::Rho,
        _ => return Err(corrupt("config.triple")),
    };
    Ok(PresentationConfig { y, triple })
}

pub fn report_json(r: &BuildReport) -> Value {
    let c = &r.completion;
    json!({
        "dimension": r.dimension,
        "expected_dimension": r.expected_dimension,
        "dimension_matches": r.dimension_matches(),
        "completion": {
            "degree_cap": c.cap,
            "input_rules": c.input_rules,
            "final_rules": c.final_rules,
            "overlaps_processed": c.overlaps_processed,
            "max_overlap_degree": c.max_overlap_degree,
            "max_lead_length": c.max_lead_length,
        },
    })
}

fn sparse_json<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| json!([k, f.render(c)]))
            .collect(),
    )
}

pub fn to_json<F: Field>(a: &CyclotomicAlgebra<F>) -> Value {
    let f = a.field();
    let s = a.structure();
    let mut products = Vec::new();
    for (i, row) in s.products_sparse().into_iter().enumerate() {
        for (j, prod) in row.into_iter().enumerate() {
            if prod.is_empty() {
                continue;
            }
            let terms: Vec<Value> = prod.iter().map(|(k, c)| json!([k, f.render(c)])).collect();
            products.push(json!([i, j, terms]));
        }
    }
    json!({
        "format": FORMAT,
        "field": f.descriptor().to_string(),
        "n": a.n(),
        "r": a.r(),
        "variant": variant_name(a.variant()),
        "config": config_json(a.config()),
        "params": params_json(a.params()),
        "basis": s.labels(),
        "unit": sparse_json(f, s.unit()),
        "generators": s.generators().iter().map(|g| sparse_json(f, g)).collect::<Vec<_>>(),
        "products": products,
        "report": report_json(&a.report()),
    })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn corrupt(what: &str) -> WorkbenchError {
    WorkbenchError::invalid(format!("corrupt dump: bad or missing {what}"))
}

/// Everything in a dump except the structure constants.
#[derive(Debug, Clone)]
pub struct DumpHeader {
    pub field: FieldDescriptor,
    pub n: usize,
    pub r: usize,
    pub variant: Variant,
    pub config: PresentationConfig,
    pub params: ParamInput,
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| WorkbenchError::invalid(format!("corrupt dump: {e}")))
}

pub fn header(v: &Value) -> Result<DumpHeader> {
    if v.get("format").and_then(Value::as_str) != Some(FORMAT) {
        return Err(corrupt("format tag"));
    }
    let field: FieldDescriptor = v
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| corrupt("field"))?
        .parse()
        .map_err(|_| corrupt("field"))?;
    let uint = |key: &str| {
        v.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| corrupt(key))
    };
    let variant = parse_variant(
        v.get("variant")
            .and_then(Value::as_str)
            .ok_or_else(|| corrupt("variant"))?,
    )
    .map_err(|_| corrupt("variant"))?;
    let config = config_from_json(v.get("config").ok_or_else(|| corrupt("config"))?)?;
    let params = input_from_json(field, v.get("params").ok_or_else(|| corrupt("params"))?)
        .map_err(|e| WorkbenchError::invalid(format!("corrupt dump: {e}")))?;
    let (n, r) = (uint("n")?, uint("r")?);
    if r != params.r() {
        return Err(corrupt("r"));
    }
    Ok(DumpHeader {
        field,
        n,
        r,
        variant,
        config,
        params,
    })
}

fn read_sparse<F: Field>(f: &F, v: &Value, dim: usize, what: &str) -> Result<SparseVec<F::Elem>> {
    let mut out: SparseVec<F::Elem> = Vec::new();
    for t in v.as_array().ok_or_else(|| corrupt(what))? {
        let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| corrupt(what))?;
        let k = pair[0]
            .as_u64()
            .map(|k| k as usize)
            .filter(|k| *k < dim)
            .ok_or_else(|| corrupt(what))?;
        let c = f
            .parse(pair[1].as_str().ok_or_else(|| corrupt(what))?)
            .map_err(|_| corrupt(what))?;
        if out.last().is_some_and(|(prev, _)| *prev >= k) {
            return Err(corrupt(what));
        }
        if !f.is_zero(&c) {
            out.push((k, c));
        }
    }
    Ok(out)
}

fn dense<F: Field>(f: &F, s: &SparseVec<F::Elem>, dim: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); dim];
    for (k, c) in s {
        out[*k] = c.clone();
    }
    out
}

/// Rebuilds the structure algebra, checking every index and coefficient;
/// the unit is checked against the table as well.
pub fn load_algebra<F: Field>(field: &F, v: &Value) -> Result<StructureAlgebra<F>> {
    let labels: Vec<String> = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| corrupt("basis"))?
        .iter()
        .map(|l| l.as_str().map(str::to_string).ok_or_else(|| corrupt("basis")))
        .collect::<Result<_>>()?;
    let d = labels.len();
    if d == 0 {
        return Err(corrupt("basis"));
    }
    let unit = dense(
        field,
        &read_sparse(field, v.get("unit").ok_or_else(|| corrupt("unit"))?, d, "unit")?,
        d,
    );
    let mut table: Vec<Vec<SparseVec<F::Elem>>> = vec![vec![Vec::new(); d]; d];
    let mut seen = vec![vec![false; d]; d];
    for entry in v
        .get("products")
        .and_then(Value::as_array)
        .ok_or_else(|| corrupt("products"))?
    {
        let e = entry
            .as_array()
            .filter(|e| e.len() == 3)
            .ok_or_else(|| corrupt("products"))?;
        let idx = |x: &Value| {
            x.as_u64()
                .map(|k| k as usize)
                .filter(|k| *k < d)
                .ok_or_else(|| corrupt("products"))
        };
        let (i, j) = (idx(&e[0])?, idx(&e[1])?);
        if std::mem::replace(&mut seen[i][j], true) {
            return Err(corrupt("products (duplicate entry)"));
        }
        table[i][j] = read_sparse(field, &e[2], d, "products")?;
    }
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| corrupt("generators"))?
        .iter()
        .map(|g| read_sparse(field, g, d, "generators").map(|s| dense(field, &s, d)))
        .collect::<Result<Vec<_>>>()?;
    let s = StructureAlgebra::from_table(field.clone(), labels, table, unit.clone()).with_generators(gens);
    for i in 0..d {
        let b = s.basis_vector(i);
        if s.mul(&unit, &b) != b || s.mul(&b, &unit) != b {
            return Err(corrupt("unit (does not act as identity)"));
        }
    }
    Ok(s)
}
