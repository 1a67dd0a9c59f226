//! Hyperbolic metrics on the one-holed torus from pentagon parameters.

mod oracle;
mod pentagon;
pub mod plane;
mod representation;

use serde_json::value::RawValue;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

pub use oracle::self_intersection_geometric;
pub use pentagon::{solve_pentagon, MetricParams, Pentagon, MAX_ITERATIONS, TOLERANCE};
pub use plane::{axis_endpoints, distance, rotation_pi, BoundaryPoint, Isometry};
pub use representation::{
    build_metric, compare_placements, octagon_midpoints, Placement, PlacementComparison,
    Representation, PROXY_WORD_LENGTH,
};

use crate::error::{Error, Result};
use crate::words::ClassKey;

pub fn geodesic_length(rep: &Representation, class: &ClassKey) -> Result<f64> {
    rep.geodesic_length(class)
}

/// Reads `{"l1": …, "l2": …, "l3": …}`.
pub fn metric_from_json(text: &str) -> Result<MetricParams> {
    let p: MetricParams =
        serde_json::from_str(text).map_err(|e| Error::InvalidMetric(e.to_string()))?;
    p.validate()?;
    Ok(p)
}

/// Serializes a JSON tree with every float written as `{:.16e}`.
struct Precise<'a>(&'a Value);

impl Serialize for Precise<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Value::Number(n) if n.is_f64() => {
                let x = n.as_f64().expect("f64 number");
                RawValue::from_string(format!("{x:.16e}"))
                    .map_err(serde::ser::Error::custom)?
                    .serialize(s)
            }
            Value::Array(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for item in items {
                    seq.serialize_element(&Precise(item))?;
                }
                seq.end()
            }
            Value::Object(fields) => {
                let mut map = s.serialize_map(Some(fields.len()))?;
                for (k, v) in fields {
                    map.serialize_entry(k, &Precise(v))?;
                }
                map.end()
            }
            other => other.serialize(s),
        }
    }
}

fn num(x: f64) -> Value {
    json!(x)
}

fn matrix(m: &Isometry) -> Value {
    json!([[num(m.a), num(m.b)], [num(m.c), num(m.d)]])
}

fn point(z: num_complex::Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

/// JSON dump of a representation, every float with 17 significant digits.
pub fn representation_json(rep: &Representation) -> String {
    let p = &rep.pentagon;
    let v = json!({
        "params": { "l1": num(rep.params.l1), "l2": num(rep.params.l2), "l3": num(rep.params.l3) },
        "placement": rep.placement,
        "A": matrix(&rep.a),
        "B": matrix(&rep.b),
        "G": point(rep.g),
        "Y": point(rep.y),
        "O": point(rep.o),
        "c": num(rep.c),
        "commutator_trace": num(rep.commutator_trace()),
        "boundary_length": num(rep.boundary_length()),
        "pentagon": {
            "G": point(p.g), "V_a": point(p.v_a), "W_a": point(p.w_a),
            "W_b": point(p.w_b), "V_b": point(p.v_b),
            "s": num(p.s), "t": num(p.t), "phi": num(p.phi),
        },
    });
    serde_json::to_string_pretty(&Precise(&v)).expect("serializable")
}
