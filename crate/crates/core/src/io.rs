//! JSON and CSV wire formats: field and cover specifications in, reports
//! out. All numerics are exact rationals rendered as `p/q` strings so that
//! reports are diffable; decimal approximations appear only in clearly
//! labeled fields.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::cover::{CriticalData, PlaneCover, PuiseuxSeries};
use crate::dz::{ExperimentReport, SignaturePlace};
use crate::field::{size, FieldElement, FieldKind, NumberField};
use crate::ideal::{PlaceKind, PrimePlace};
use crate::padic::OracleVerdict;
use crate::poly::bipoly::BiPoly;
use crate::poly::Poly;
use crate::ram::{BadSet, Prediction, VerifyReport, Witness};
use crate::rat::{parse_rat, rat_string, Rat};

pub type KPoly = Poly<FieldElement>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

// ---------------------------------------------------------------------------
// parsing

pub fn parse_field(v: &Value) -> Result<NumberField, ParseError> {
    let obj = v.as_object().ok_or(ParseError("field must be an object".into()))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(NumberField::rational()),
        Some("quadratic") => {
            let d = obj
                .get("d")
                .and_then(Value::as_i64)
                .ok_or(ParseError("quadratic field needs an integer d".into()))?;
            if d == 0 || d == 1 || !crate::rat::is_squarefree(&crate::rat::int(d)) {
                return err(format!("d = {} must be squarefree and not 0 or 1", d));
            }
            Ok(NumberField::quadratic(d))
        }
        _ => err("field.kind must be \"rational\" or \"quadratic\""),
    }
}

/// Coefficient values: JSON number, "p/q" string, or {"a": .., "b": ..}.
pub fn parse_element(v: &Value, field: &NumberField) -> Result<FieldElement, ParseError> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            match parse_rat(&s) {
                Some(q) => Ok(FieldElement::from_rat(q)),
                None => err(format!("non-rational number {}", s)),
            }
        }
        Value::String(s) => parse_element_str(s, field),
        Value::Object(o) => {
            let a = o.get("a").map(|x| parse_value_rat(x)).transpose()?.unwrap_or_else(Rat::zero);
            let b = o.get("b").map(|x| parse_value_rat(x)).transpose()?.unwrap_or_else(Rat::zero);
            if !b.is_zero() && field.kind() == FieldKind::Rational {
                return err("rational field element cannot have a sqrt part");
            }
            Ok(FieldElement::new(field, a, b))
        }
        _ => err("element must be a number, a \"p/q\" string, or {\"a\",\"b\"}"),
    }
}

fn parse_value_rat(v: &Value) -> Result<Rat, ParseError> {
    match v {
        Value::Number(n) => parse_rat(&n.to_string()).ok_or(ParseError("bad number".into())),
        Value::String(s) => parse_rat(s).ok_or(ParseError(format!("bad rational: {}", s))),
        _ => err("rational must be a number or \"p/q\" string"),
    }
}

/// Element syntax on the command line: `p/q` or `a,b` for `a + b sqrt(d)`.
pub fn parse_element_str(s: &str, field: &NumberField) -> Result<FieldElement, ParseError> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once(',') {
        let a = parse_rat(a).ok_or(ParseError(format!("bad rational: {}", a)))?;
        let b = parse_rat(b).ok_or(ParseError(format!("bad rational: {}", b)))?;
        if !b.is_zero() && field.kind() == FieldKind::Rational {
            return err("rational field element cannot have a sqrt part");
        }
        Ok(FieldElement::new(field, a, b))
    } else {
        let a = parse_rat(s).ok_or(ParseError(format!("bad rational: {}", s)))?;
        Ok(FieldElement::from_rat(a))
    }
}

/// Polynomials come in lowest degree first; bivariate as an array of
/// T-coefficient arrays indexed by the U-power.
pub fn parse_bipoly(v: &Value, field: &NumberField) -> Result<BiPoly, ParseError> {
    let rows = v.as_array().ok_or(ParseError("F must be an array of arrays".into()))?;
    let mut cu = Vec::new();
    for row in rows {
        let coeffs = row
            .as_array()
            .ok_or(ParseError("each U-coefficient must be a T-coefficient array".into()))?;
        let mut p = Vec::new();
        for c in coeffs {
            p.push(parse_element(c, field)?);
        }
        cu.push(KPoly::new(p));
    }
    Ok(BiPoly::new(cu))
}

/// Top-level cover specification:
/// `{"field": {...}, "cover": {"F": [[...]], "genus": g}}`.
pub fn parse_cover_config(v: &Value) -> Result<PlaneCover, ParseError> {
    let obj = v.as_object().ok_or(ParseError("config must be an object".into()))?;
    let field = parse_field(obj.get("field").unwrap_or(&Value::Null))?;
    let cov = obj
        .get("cover")
        .and_then(Value::as_object)
        .ok_or(ParseError("config needs a cover object".into()))?;
    let f = parse_bipoly(cov.get("F").unwrap_or(&Value::Null), &field)?;
    let genus = match cov.get("genus") {
        None | Some(Value::Null) => None,
        Some(g) => Some(
            g.as_u64().ok_or(ParseError("genus must be a nonnegative integer".into()))? as u32,
        ),
    };
    PlaneCover::new(field, f, genus).map_err(|e| ParseError(e.to_string()))
}

// ---------------------------------------------------------------------------
// serialization

pub fn element_json(x: &FieldElement) -> Value {
    if x.is_rational() {
        Value::String(rat_string(x.as_rat().unwrap()))
    } else {
        json!({"a": rat_string(x.a()), "b": rat_string(x.b())})
    }
}

pub fn field_json(f: &NumberField) -> Value {
    match f.kind() {
        FieldKind::Rational => json!({"kind": "rational"}),
        FieldKind::Quadratic => json!({"kind": "quadratic", "d": f.d()}),
    }
}

pub fn kpoly_json(p: &KPoly) -> Value {
    Value::Array((0..=p.deg()).map(|k| element_json(&p.coeff(k))).collect())
}

pub fn kpoly_string(p: &KPoly) -> String {
    format!("{}", p)
}

pub fn place_json(v: &PrimePlace) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(v.p));
    m.insert("kind".into(), json!(v.kind.as_str()));
    m.insert("norm".into(), json!(v.norm().to_string()));
    if v.kind != PlaceKind::Rational {
        let basis = v.ideal.basis_elements();
        if basis.len() == 2 {
            m.insert("gen".into(), element_json(&basis[1]));
        }
    }
    Value::Object(m)
}

pub fn oracle_verdict_json(v: &OracleVerdict) -> Value {
    json!({"status": v.status.as_str(), "stage": v.stage, "precision": v.precision})
}

pub fn witness_json(w: &Witness, crit: &CriticalData) -> Value {
    let target = match w.factor_index {
        None => json!("infinity"),
        Some(i) => kpoly_json(&crit.factors[i].poly),
    };
    json!({"value": target, "k": w.k})
}

pub fn prediction_json(p: &Prediction, crit: &CriticalData) -> Value {
    json!({
        "verdict": p.verdict.as_str(),
        "witness": p.witness.as_ref().map(|w| witness_json(w, crit)),
        "v_delta": p.val_delta,
        "v_tau": p.val_tau,
    })
}

pub fn bad_set_json(b: &BadSet) -> Value {
    json!({
        "vertical": b.vertical.iter().collect::<Vec<_>>(),
        "collision": b.collision.iter().collect::<Vec<_>>(),
        "definition_field": b.definition_field.iter().collect::<Vec<_>>(),
        "all": b.all.iter().collect::<Vec<_>>(),
    })
}

pub fn analyze_json(cover: &PlaneCover, crit: &CriticalData, bad: &BadSet) -> Value {
    let factors: Vec<Value> = crit
        .factors
        .iter()
        .map(|f| {
            json!({
                "poly": kpoly_json(&f.poly),
                "profile": f.profile,
                "certified": f.certified,
                "uncertified_mass": f.analysis.uncertified_mass,
            })
        })
        .collect();
    json!({
        "field": field_json(cover.field()),
        "degree": cover.degree(),
        "genus": cover.genus(),
        "resultant": kpoly_json(&crit.resultant),
        "delta": kpoly_json(&crit.delta),
        "m": crit.m(),
        "factors": factors,
        "infinity_critical": crit.infinity_critical,
        "infinity_certified": crit.infinity_certified,
        "infinity_profile": crit.infinity_profile,
        "bad_set": bad_set_json(bad),
    })
}

pub fn puiseux_json(s: &PuiseuxSeries, eisenstein: Option<(u64, &[String])>) -> Value {
    let coeffs: Vec<Value> =
        (1..=s.order()).map(|k| element_json(s.coeff(k))).collect();
    let mut m = Map::new();
    m.insert("base".into(), json!([element_json(&s.base.0), element_json(&s.base.1)]));
    m.insert("nu".into(), json!(s.nu));
    m.insert("coeffs".into(), Value::Array(coeffs));
    if let Some((bound, failures)) = eisenstein {
        m.insert(
            "eisenstein".into(),
            json!({"prime_bound": bound, "failures": failures, "all_integral": failures.is_empty()}),
        );
    }
    Value::Object(m)
}

pub fn verify_json(rep: &VerifyReport) -> Value {
    json!({
        "pairs": rep.rows.len(),
        "mismatches": rep.mismatches,
        "needs_oracle": rep.needs_oracle,
        "undetermined": rep.undetermined,
        "skipped_critical": rep.skipped_critical,
    })
}

/// CSV with the fixed columns `tau,place,verdict,witness,k,oracle_verdict,agree`.
pub fn verify_csv(rep: &VerifyReport, crit: &CriticalData) -> String {
    let mut out = String::from("tau,place,verdict,witness,k,oracle_verdict,agree\n");
    for row in &rep.rows {
        let (witness, k) = match &row.witness {
            None => (String::new(), String::new()),
            Some(w) => {
                let t = match w.factor_index {
                    None => "infinity".to_string(),
                    Some(i) => kpoly_string(&crit.factors[i].poly),
                };
                (t, w.k.map(|k| k.to_string()).unwrap_or_default())
            }
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.tau,
            row.place.label(),
            row.prediction.as_str(),
            csv_quote(&witness),
            k,
            row.oracle.as_str(),
            row.agree
        ));
    }
    out
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn experiment_json(rep: &ExperimentReport) -> Value {
    let assignments: Vec<Value> = rep
        .assignments
        .iter()
        .map(|(v, cert)| {
            json!({
                "place": place_json(v),
                "tau": element_json(&cert.tau),
                "prefix_len": cert.prefix_len,
                "lambda_ratio": rat_string(&cert.lambda_ratio),
            })
        })
        .collect();
    json!({
        "B": rat_string(&rep.b),
        "lambda": rat_string(&rep.lambda),
        "norm_window": [rep.window.0.to_string(), rep.window.1.to_string()],
        "M_B_count": rep.m_b_count,
        "skipped_no_degree_one": rep.skipped_no_degree_one,
        "assignments": assignments,
        "omega": rep.omega.iter().map(element_json).collect::<Vec<_>>(),
        "omega_prime": rep.omega_prime.iter().map(element_json).collect::<Vec<_>>(),
        "degree_log2_lower_bound": rep.degree_log2_lower_bound,
        "distinct_field_lower_bound": rep.distinct_field_lower_bound,
        "reducible_count": rep.reducible_count,
        "constants": {
            "m": rep.constants.m,
            "infinity_critical": rep.constants.infinity_critical,
            "riemann_hurwitz_bound": rep.constants.riemann_hurwitz_bound,
            "bound_satisfied": rep.constants.bound_satisfied,
            "c": rep.constants.c.as_ref().map(rat_string),
            "lambda": rat_string(&rep.constants.lambda),
            "genus_missing": rep.constants.genus_missing,
        },
    })
}

/// `omega.csv`: tau, size, primitive place(s), irreducible.
pub fn omega_csv(rep: &ExperimentReport) -> String {
    let mut out = String::from("tau,size,primitive_place,irreducible\n");
    for tau in &rep.omega {
        let places: Vec<String> = rep
            .assignments
            .iter()
            .filter(|(_, c)| &c.tau == tau)
            .map(|(v, _)| v.label())
            .collect();
        let irr = rep.omega_prime.contains(tau);
        out.push_str(&format!(
            "{},{},{},{}\n",
            tau,
            size(tau).to_decimal(6),
            csv_quote(&places.join(";")),
            irr
        ));
    }
    out
}

/// `fields.csv`: tau, signature hash (FNV-1a of the canonical signature
/// string, stable across runs).
pub fn fields_csv(signatures: &[(FieldElement, (Vec<usize>, Vec<SignaturePlace>))]) -> String {
    let mut out = String::from("tau,signature_hash\n");
    for (tau, sig) in signatures {
        out.push_str(&format!("{},{:016x}\n", tau, fnv1a(&signature_string(sig))));
    }
    out
}

pub fn signature_string(sig: &(Vec<usize>, Vec<SignaturePlace>)) -> String {
    let degs: Vec<String> = sig.0.iter().map(|d| d.to_string()).collect();
    let places: Vec<String> =
        sig.1.iter().map(|(n, p, label)| format!("{}:{}:{}", n, p, label)).collect();
    format!("deg[{}] ram[{}]", degs.join(" "), places.join(" "))
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn parse_fields() {
        assert_eq!(parse_field(&json!({"kind": "rational"})).unwrap(), NumberField::rational());
        assert_eq!(
            parse_field(&json!({"kind": "quadratic", "d": -1})).unwrap(),
            NumberField::quadratic(-1)
        );
        assert!(parse_field(&json!({"kind": "quadratic", "d": 12})).is_err());
        assert!(parse_field(&json!({"kind": "cubic"})).is_err());
    }

    #[test]
    fn parse_elements() {
        let q = NumberField::rational();
        let gi = NumberField::quadratic(-1);
        assert_eq!(parse_element(&json!("3/2"), &q).unwrap(), FieldElement::from_rat(ratio(3, 2)));
        assert_eq!(parse_element(&json!(5), &q).unwrap(), FieldElement::from_rat(rat(5)));
        let z = parse_element(&json!({"a": "2", "b": "1"}), &gi).unwrap();
        assert_eq!(z, FieldElement::new(&gi, rat(2), rat(1)));
        assert!(parse_element(&json!({"a": "2", "b": "1"}), &q).is_err());
        assert_eq!(
            parse_element_str("2,-1", &gi).unwrap(),
            FieldElement::new(&gi, rat(2), rat(-1))
        );
    }

    #[test]
    fn cover_roundtrip() {
        let cfg = json!({
            "field": {"kind": "rational"},
            "cover": {"F": [[0, -1], [], [1]], "genus": 0}
        });
        let cov = parse_cover_config(&cfg).unwrap();
        assert_eq!(cov.degree(), 2);
        assert_eq!(cov.fiber_poly(&FieldElement::from_int(4)).coeff(0), FieldElement::from_int(-4));
        // serialization of elements
        assert_eq!(element_json(&FieldElement::from_rat(ratio(3, 2))), json!("3/2"));
        let gi = NumberField::quadratic(-1);
        let z = FieldElement::new(&gi, rat(2), rat(1));
        assert_eq!(element_json(&z), json!({"a": "2", "b": "1"}));
    }

    #[test]
    fn deterministic_json_output() {
        let cfg = json!({
            "field": {"kind": "rational"},
            "cover": {"F": [[0, -1], [], [1]], "genus": 0}
        });
        let cov = parse_cover_config(&cfg).unwrap();
        let (crit, bad) = crate::ram::analyze(&cov).unwrap();
        let a = serde_json::to_string(&analyze_json(&cov, &crit, &bad)).unwrap();
        let b = serde_json::to_string(&analyze_json(&cov, &crit, &bad)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"delta\""));
    }
}
