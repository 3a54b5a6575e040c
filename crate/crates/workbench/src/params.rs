//! Parameter sets given inline or as `key = value` files.
//!
//! ```text
//! # B_(2,n) over GF(101)
//! field = gfp:101
//! q = 3
//! u = 2, 5
//! admissible = true
//! ```
//!
//! Keys: `field`, `q`, `rho`, `r`, `u`, `admissible`, `alpha_choice`,
//! `semi_degree`, `omega` (the explicit `omega_1, ..., omega_(r-1)`).
//! Without `rho` it is solved from the admissibility condition using
//! `alpha_choice` (0 or 1) to pick `alpha`.

use std::collections::BTreeMap;

use bmw_core::{Field, FieldDescriptor, OmegaMode, ParameterSet};
use serde_json::{json, Value};

use crate::error::{Result, WorkbenchError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamInput {
    pub field: FieldDescriptor,
    pub q: String,
    pub rho: Option<String>,
    pub u: Vec<String>,
    pub alpha_choice: usize,
    pub semi_degree: Option<usize>,
    pub omega: Option<Vec<String>>,
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect()
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(WorkbenchError::invalid(format!(
            "{key}: expected true or false, got {v:?}"
        ))),
    }
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| WorkbenchError::invalid(format!("{key}: expected a non-negative integer, got {v:?}")))
}

/// Raw values before validation, from either source.
#[derive(Debug, Clone, Default)]
pub struct RawParams {
    pub field: Option<String>,
    pub q: Option<String>,
    pub rho: Option<String>,
    pub r: Option<usize>,
    pub u: Option<String>,
    pub admissible: bool,
    pub alpha_choice: Option<usize>,
    pub semi_degree: Option<usize>,
    pub omega: Option<String>,
}

impl RawParams {
    pub fn is_empty(&self) -> bool {
        self.field.is_none()
            && self.q.is_none()
            && self.rho.is_none()
            && self.r.is_none()
            && self.u.is_none()
            && !self.admissible
            && self.alpha_choice.is_none()
            && self.semi_degree.is_none()
            && self.omega.is_none()
    }

    pub fn from_file_text(text: &str) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| WorkbenchError::invalid(format!("line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if seen.insert(k.clone(), v).is_some() {
                return Err(WorkbenchError::invalid(format!(
                    "line {}: duplicate key {k}",
                    lineno + 1
                )));
            }
        }
        let mut raw = RawParams::default();
        for (k, v) in seen {
            match k.as_str() {
                "field" => raw.field = Some(v),
                "q" => raw.q = Some(v),
                "rho" => raw.rho = Some(v),
                "r" => raw.r = Some(parse_usize(&k, &v)?),
                "u" => raw.u = Some(v),
                "admissible" => raw.admissible = parse_bool(&k, &v)?,
                "alpha_choice" => raw.alpha_choice = Some(parse_usize(&k, &v)?),
                "semi_degree" => raw.semi_degree = Some(parse_usize(&k, &v)?),
                "omega" => raw.omega = Some(v),
                _ => return Err(WorkbenchError::invalid(format!("unknown parameter key {k:?}"))),
            }
        }
        Ok(raw)
    }

    pub fn validate(self) -> Result<ParamInput> {
        let field: FieldDescriptor = self.field.as_deref().unwrap_or("gfp:101").parse()?;
        let q = self.q.ok_or_else(|| WorkbenchError::invalid("missing q"))?;
        let u = split_list(&self.u.ok_or_else(|| WorkbenchError::invalid("missing u"))?);
        if u.is_empty() {
            return Err(WorkbenchError::invalid("u must list at least one value"));
        }
        if let Some(r) = self.r {
            if r != u.len() {
                return Err(WorkbenchError::invalid(format!(
                    "r = {r} but u has {} entries",
                    u.len()
                )));
            }
        }
        let alpha_choice = self.alpha_choice.unwrap_or(0);
        if alpha_choice > 1 {
            return Err(WorkbenchError::invalid("alpha_choice must be 0 or 1"));
        }
        let omega = self.omega.map(|s| split_list(&s));
        if self.admissible && (self.semi_degree.is_some() || omega.is_some()) {
            return Err(WorkbenchError::invalid(
                "admissible excludes semi_degree and explicit omega values",
            ));
        }
        if self.semi_degree.is_some() && omega.is_some() {
            return Err(WorkbenchError::invalid("semi_degree and omega are mutually exclusive"));
        }
        if omega.is_some() && self.rho.is_none() {
            return Err(WorkbenchError::invalid("explicit omega values need an explicit rho"));
        }
        Ok(ParamInput {
            field,
            q,
            rho: self.rho,
            u,
            alpha_choice,
            semi_degree: self.semi_degree,
            omega,
        })
    }
}

impl ParamInput {
    pub fn r(&self) -> usize {
        self.u.len()
    }

    pub fn mode_name(&self) -> &'static str {
        match (self.semi_degree, &self.omega) {
            (Some(_), _) => "semi-admissible",
            (None, Some(_)) => "explicit",
            (None, None) => "admissible",
        }
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<ParameterSet<F>> {
        let parse = |key: &str, s: &String| {
            field
                .parse(s)
                .map_err(|e| WorkbenchError::invalid(format!("{key}: {e}")))
        };
        let q = parse("q", &self.q)?;
        let u = self.u.iter().map(|x| parse("u", x)).collect::<Result<Vec<_>>>()?;
        let mode = match (self.semi_degree, &self.omega) {
            (Some(degree), _) => OmegaMode::SemiAdmissible { degree },
            (None, Some(w)) => OmegaMode::Explicit(w.iter().map(|x| parse("omega", x)).collect::<Result<Vec<_>>>()?),
            (None, None) => OmegaMode::Admissible,
        };
        let p = match (&self.rho, &mode) {
            (Some(rho), _) => ParameterSet::new(field.clone(), q, parse("rho", rho)?, u, mode)?,
            (None, OmegaMode::SemiAdmissible { degree }) => {
                ParameterSet::semi_admissible(field.clone(), q, u, *degree, self.alpha_choice)?
            }
            (None, _) => ParameterSet::admissible(field.clone(), q, u, self.alpha_choice)?,
        };
        Ok(p)
    }
}

/// The parameters as they go into reports and dumps; `rho` is always
/// explicit so a dump reloads without re-solving.
pub fn params_json<F: Field>(p: &ParameterSet<F>) -> Value {
    let f = p.field();
    let mut out = json!({
        "q": f.render(p.q()),
        "rho": f.render(p.rho()),
        "delta": f.render(p.delta()),
        "u": p.u().iter().map(|x| f.render(x)).collect::<Vec<_>>(),
        "e": p.e().to_string(),
        "alpha": p.alpha().map(|a| f.render(a)),
    });
    let obj = out.as_object_mut().expect("object");
    match p.mode() {
        OmegaMode::Admissible => {
            obj.insert("mode".into(), json!("admissible"));
        }
        OmegaMode::SemiAdmissible { degree } => {
            obj.insert("mode".into(), json!("semi-admissible"));
            obj.insert("semi_degree".into(), json!(degree));
        }
        OmegaMode::Explicit(w) => {
            obj.insert("mode".into(), json!("explicit"));
            obj.insert("omega".into(), json!(w.iter().map(|x| f.render(x)).collect::<Vec<_>>()));
        }
    }
    if let Ok(w0) = p.omega(0) {
        obj.insert("omega0".into(), json!(f.render(&w0)));
    }
    out
}

/// Inverse of [`params_json`] for reloading dumps.
pub fn input_from_json(field: FieldDescriptor, v: &Value) -> Result<ParamInput> {
    let bad = |what: &str| WorkbenchError::invalid(format!("params: missing or malformed {what}"));
    let s = |key: &str| {
        v.get(key)
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| bad(key))
    };
    let list = |key: &str| -> Result<Vec<String>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(key))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad(key)))
            .collect()
    };
    let mode = s("mode")?;
    let (semi_degree, omega) = match mode.as_str() {
        "admissible" => (None, None),
        "semi-admissible" => (
            Some(
                v.get("semi_degree")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("semi_degree"))? as usize,
            ),
            None,
        ),
        "explicit" => (None, Some(list("omega")?)),
        _ => return Err(bad("mode")),
    };
    Ok(ParamInput {
        field,
        q: s("q")?,
        rho: Some(s("rho")?),
        u: list("u")?,
        alpha_choice: 0,
        semi_degree,
        omega,
    })
}
