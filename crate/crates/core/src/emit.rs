//! JSON form of polynomials: `{"m", "degree", "terms": [{"coeff_a",
//! "coeff_b", "monomial"}]}` with integers as JSON numbers when they fit in
//! an `i64` and as decimal strings otherwise.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coeffs::Q2mScalar;
use crate::error::{Error, Result};
use crate::poly::{parse_monomial, Homogeneity, Poly, Variable};

fn int_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn int_from(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

pub fn to_json<V: Variable>(p: &Poly<V>) -> Value {
    let degree = match p.homogeneous_degree() {
        Homogeneity::Degree(d) => json!(d),
        _ => Value::Null,
    };
    let terms: Vec<Value> = p
        .terms()
        .map(|(mono, c)| {
            json!({
                "coeff_a": int_value(c.a()),
                "coeff_b": int_value(c.b()),
                "monomial": mono.to_string(),
            })
        })
        .collect();
    json!({ "m": p.m(), "degree": degree, "terms": terms })
}

pub fn from_json<V: Variable>(v: &Value) -> Result<Poly<V>> {
    let m = v["m"]
        .as_u64()
        .and_then(|m| u32::try_from(m).ok())
        .ok_or_else(|| Error::Parse("missing or invalid \"m\"".into()))?;
    let terms = v["terms"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing \"terms\" array".into()))?;
    let mut out = Poly::zero(m);
    for t in terms {
        let mono = t["monomial"]
            .as_str()
            .ok_or_else(|| Error::Parse("term without monomial".into()))?;
        let c = Q2mScalar::new(int_from(&t["coeff_a"])?, int_from(&t["coeff_b"])?, m);
        out.add_term(parse_monomial(mono)?, &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::ClassPoly;
    use crate::poly::GradedPoly;

    #[test]
    fn round_trip() {
        let p = GradedPoly::parse("(x1-y1)*(1-al*x1*y1)", 1).unwrap();
        let v = to_json(&p);
        assert_eq!(v["degree"], json!(1));
        assert_eq!(from_json::<crate::poly::VarId>(&v).unwrap(), p);
        let zero = to_json(&GradedPoly::zero(2));
        assert_eq!(zero["terms"], json!([]));
        let c = ClassPoly::parse("A[2;1]*A[1;-1]-al*A[2;3]", 1).unwrap();
        assert_eq!(from_json::<crate::kernels::ClassVar>(&to_json(&c)).unwrap(), c);
    }

    #[test]
    fn large_coefficients_become_strings() {
        let p = GradedPoly::parse("100000000000*100000000000*x1", 1).unwrap();
        let v = to_json(&p);
        assert_eq!(v["terms"][0]["coeff_a"], json!("10000000000000000000000"));
        assert_eq!(from_json::<crate::poly::VarId>(&v).unwrap(), p);
    }
}
