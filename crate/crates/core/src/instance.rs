//! On-disk instance files: one JSON document holding a labelled graph and
//! a set of named zero-sum divisors.
//!
//! ```json
//! {"vertices": ["P","O"],
//!  "edges": [{"id":"cu","ends":["P","O"],"label":[1,0]},
//!            {"id":"cv","ends":["P","O"],"label":[0,1]}],
//!  "components": ["Z1","Z2"],
//!  "divisors": {"D": {"P":1,"O":-1}, "E": {"P":1,"O":-1}}}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use num::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::labelled::LabelledGraph;
use crate::network::Divisor;
use crate::rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    ends: [String; 2],
    label: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
    components: Vec<String>,
    #[serde(default)]
    divisors: BTreeMap<String, BTreeMap<String, i64>>,
}

/// A validated instance: connected graph, nonzero labels of the right
/// length, zero-sum divisors over known vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub labelled: LabelledGraph,
    pub divisors: BTreeMap<String, Divisor>,
}

pub fn parse_instance(path: impl AsRef<Path>) -> Result<InstanceFile> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    InstanceFile::from_json(&text)
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let r = doc.components.len();
        for e in &doc.edges {
            if e.label.len() != r {
                return Err(Error::Schema(format!(
                    "edge `{}`: label has {} entries but there are {r} components",
                    e.id,
                    e.label.len()
                )));
            }
        }
        let graph = Multigraph::from_parts(
            doc.vertices.iter().map(String::as_str),
            doc.edges
                .iter()
                .map(|e| (e.id.as_str(), e.ends[0].as_str(), e.ends[1].as_str())),
        )?;
        let divisors = doc
            .divisors
            .iter()
            .map(|(name, values)| {
                let d = Divisor::from_named(
                    &graph,
                    values.iter().map(|(v, &x)| (v.as_str(), rational::int(x))),
                )?;
                if !d.is_zero_sum() {
                    return Err(Error::DivisorNotZeroSum(name.clone()));
                }
                Ok((name.clone(), d))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let labels = doc.edges.into_iter().map(|e| e.label).collect();
        let labelled = LabelledGraph::new(graph, doc.components, labels)?;
        Ok(InstanceFile { labelled, divisors })
    }

    pub fn to_json(&self) -> String {
        let g = self.labelled.graph();
        let doc = InstanceDoc {
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .zip(self.labelled.labels())
                .map(|(e, a)| EdgeDoc {
                    id: e.id.clone(),
                    ends: [g.vertex_id(e.ends[0]).into(), g.vertex_id(e.ends[1]).into()],
                    label: a.clone(),
                })
                .collect(),
            components: self.labelled.components().to_vec(),
            divisors: self
                .divisors
                .iter()
                .map(|(name, d)| {
                    let values = d
                        .values()
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(v, x)| {
                            let x = x
                                .to_integer()
                                .to_i64()
                                .expect("instance divisors are small integers");
                            (g.vertex_id(v).to_string(), x)
                        })
                        .collect();
                    (name.clone(), values)
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("instance documents always serialize")
    }

    pub fn divisor(&self, name: &str) -> Result<&Divisor> {
        self.divisors
            .get(name)
            .ok_or_else(|| Error::UnknownDivisor(name.to_string()))
    }
}
