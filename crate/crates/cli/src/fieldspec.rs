//! Field descriptors: `Q`, `F5`, `Q(s,t)`, `F5(s,t)`, `Q[x]/(x^2 + 1)`.

use lpa_core::graph::is_identifier;
use lpa_core::{BaseField, Field};

use crate::error::CliError;
use crate::expr::parse_upoly;

fn parse_base(s: &str) -> Result<BaseField, CliError> {
    if s == "Q" {
        return Ok(BaseField::Rationals);
    }
    let digits = s
        .strip_prefix('F')
        .map(|d| d.trim_start_matches('<').trim_end_matches('>'))
        .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
        .ok_or_else(|| CliError::syntax(format!("unknown base field {s:?}; expected Q or F<p>")))?;
    let p: u64 = digits.parse().map_err(|_| CliError::syntax(format!("prime {digits} is too large")))?;
    Ok(BaseField::prime(p)?)
}

pub fn parse_field(text: &str) -> Result<Field, CliError> {
    let t = text.trim();
    if let Some(open) = t.find('[') {
        let base = parse_base(t[..open].trim())?;
        let (var, tail) = t[open + 1..].split_once(']').ok_or_else(|| CliError::syntax("expected `]`"))?;
        let var = var.trim();
        if !is_identifier(var) {
            return Err(CliError::syntax(format!("invalid variable name {var:?}")));
        }
        let poly = tail
            .trim()
            .strip_prefix('/')
            .map(str::trim)
            .and_then(|p| p.strip_prefix('('))
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| CliError::syntax("expected `/(<polynomial>)` after the variable"))?;
        let modulus = parse_upoly(poly, var, &base)?;
        return Ok(Field::extension(base, var, modulus)?);
    }
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(open) = s.find('(') {
        let base = parse_base(&s[..open])?;
        let vars = s[open + 1..].strip_suffix(')').ok_or_else(|| CliError::syntax("expected `)`"))?;
        let names: Vec<&str> = vars.split(',').collect();
        if let Some(bad) = names.iter().find(|v| !is_identifier(v)) {
            return Err(CliError::syntax(format!("invalid variable name {bad:?}")));
        }
        return Ok(Field::function_field(base, &names)?);
    }
    Ok(match parse_base(&s)? {
        BaseField::Rationals => Field::rationals(),
        BaseField::Prime(p) => Field::prime(p)?,
    })
}
