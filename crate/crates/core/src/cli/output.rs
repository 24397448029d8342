use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::arith::CyclotomicNumber;
use crate::characters::DirichletCharacter;
use crate::idealnum::NumeratorOrder;

pub fn big(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

pub fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn cyclotomic(x: &CyclotomicNumber) -> Value {
    let coeffs: Vec<Value> = x
        .coeffs()
        .iter()
        .map(|c| json!([c.numer().to_string(), c.denom().to_string()]))
        .collect();
    json!({ "level": x.level().to_string(), "coeffs": coeffs })
}

pub fn character(index: usize, phi: &DirichletCharacter) -> Value {
    json!({
        "index": index,
        "modulus": phi.modulus().to_string(),
        "exponents": phi.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "order": phi.order().to_string(),
        "conductor": phi.conductor().to_string(),
    })
}

pub fn order(o: &NumeratorOrder) -> Value {
    json!({
        "order": big(&o.order),
        "contributions": o.contributions.iter().map(|(q, f, v)| json!({
            "prime": q.to_string(), "residue_degree": f.to_string(), "valuation": v.to_string()
        })).collect::<Vec<_>>(),
    })
}

pub fn primes(ps: &[u64]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect())
}

/// Tabular output: one header, rows of strings.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Table {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}
