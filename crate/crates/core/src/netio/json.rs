//! JSON formats for gene-level networks and state maps.
//!
//! PBN: `{"n": 2, "genes": [[{"table": "0101", "prob": 0.6}, ...], ...]}`,
//! where character `u` of a table is the gene's next value at state `u` of
//! `{0,1}^n` in lexicographic order and gene order is bit significance order.
//!
//! State map: `{"map": {"sourceId": "targetId", ...}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphisms::StateMap;
use crate::network::{Pbn, Predictor, Prn};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PredictorDoc {
    table: String,
    prob: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PbnDoc {
    n: usize,
    genes: Vec<Vec<PredictorDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    map: BTreeMap<String, String>,
}

pub fn parse_pbn_json(text: &str) -> Result<Pbn> {
    let doc: PbnDoc = serde_json::from_str(text)?;
    let genes = doc
        .genes
        .into_iter()
        .enumerate()
        .map(|(i, preds)| {
            preds
                .into_iter()
                .enumerate()
                .map(|(j, p)| {
                    let table = p
                        .table
                        .chars()
                        .map(|c| match c {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            other => Err(Error::invalid(format!(
                                "gene {} predictor {}: table character `{other}` is not 0 or 1",
                                i + 1,
                                j + 1
                            ))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Predictor {
                        table,
                        prob: p.prob,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Pbn::new(doc.n, genes)
}

pub fn pbn_to_json(pbn: &Pbn) -> String {
    let doc = PbnDoc {
        n: pbn.gene_count(),
        genes: pbn
            .genes()
            .iter()
            .map(|preds| {
                preds
                    .iter()
                    .map(|p| PredictorDoc {
                        table: p.table.iter().map(|&b| if b { '1' } else { '0' }).collect(),
                        prob: p.prob,
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn parse_state_map_json(text: &str, source: &Prn, target: &Prn) -> Result<StateMap> {
    let doc: MapDoc = serde_json::from_str(text)?;
    StateMap::from_ids(
        source,
        target,
        doc.map.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
}

pub fn state_map_to_json(map: &StateMap, source: &Prn, target: &Prn) -> String {
    let doc = MapDoc {
        map: map
            .id_pairs(source, target)
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}
