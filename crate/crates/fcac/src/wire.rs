//! Wire formats of the client → server message.
//!
//! CSV: one record per node, `client_id, M, w_0, ..., w_{d-1}`.
//! JSON: `{"client_id": c, "d": d, "nodes": [{"m": M, "w": [...]}]}`.

use std::io::{Read, Write};

use anyhow::{ensure, Context};
use fcac_core::ClientResult;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireNode {
    pub m: u64,
    pub w: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub client_id: usize,
    pub d: usize,
    pub nodes: Vec<WireNode>,
}

impl From<&ClientResult> for Envelope {
    fn from(r: &ClientResult) -> Self {
        Envelope {
            client_id: r.client_id(),
            d: r.dim().unwrap_or(0),
            nodes: r
                .nodes()
                .iter()
                .zip(r.winning_counts())
                .map(|(w, &m)| WireNode { m, w: w.clone() })
                .collect(),
        }
    }
}

impl TryFrom<Envelope> for ClientResult {
    type Error = anyhow::Error;

    fn try_from(e: Envelope) -> anyhow::Result<Self> {
        ensure!(
            e.nodes.iter().all(|n| n.w.len() == e.d),
            "client {}: node width differs from d = {}",
            e.client_id,
            e.d
        );
        let (nodes, counts) = e.nodes.into_iter().map(|n| (n.w, n.m)).unzip();
        Ok(ClientResult::from_parts(e.client_id, nodes, counts)?)
    }
}

pub fn to_json(results: &[ClientResult]) -> anyhow::Result<String> {
    let envelopes: Vec<Envelope> = results.iter().map(Envelope::from).collect();
    Ok(serde_json::to_string_pretty(&envelopes)?)
}

pub fn from_json(text: &str) -> anyhow::Result<Vec<ClientResult>> {
    let envelopes: Vec<Envelope> = serde_json::from_str(text)?;
    envelopes.into_iter().map(ClientResult::try_from).collect()
}

pub fn write_csv<W: Write>(out: W, results: &[ClientResult]) -> anyhow::Result<()> {
    let dim = results.iter().find_map(ClientResult::dim).unwrap_or(0);
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<String> = ["client_id", "M"]
        .into_iter()
        .map(str::to_owned)
        .chain((0..dim).map(|j| format!("w_{j}")))
        .collect();
    w.write_record(&header)?;
    for r in results {
        for (node, m) in r.nodes().iter().zip(r.winning_counts()) {
            let mut row = vec![r.client_id().to_string(), m.to_string()];
            row.extend(node.iter().map(f64::to_string));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Groups records by client id in order of first appearance. Clients that
/// sent no nodes cannot be represented and do not appear.
pub fn read_csv<R: Read>(input: R) -> anyhow::Result<Vec<ClientResult>> {
    let mut reader = csv::Reader::from_reader(input);
    let mut grouped: Vec<(usize, Vec<Vec<f64>>, Vec<u64>)> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 2;
        ensure!(record.len() >= 3, "row {row}: expected client_id, M and at least one weight");
        let client: usize = record[0].parse().with_context(|| format!("row {row}, column 1"))?;
        let m: u64 = record[1].parse().with_context(|| format!("row {row}, column 2"))?;
        let w = record
            .iter()
            .skip(2)
            .enumerate()
            .map(|(j, c)| c.parse::<f64>().with_context(|| format!("row {row}, column {}", j + 3)))
            .collect::<anyhow::Result<Vec<f64>>>()?;
        match grouped.iter_mut().find(|g| g.0 == client) {
            Some(g) => {
                g.1.push(w);
                g.2.push(m);
            }
            None => grouped.push((client, vec![w], vec![m])),
        }
    }
    grouped
        .into_iter()
        .map(|(c, nodes, counts)| Ok(ClientResult::from_parts(c, nodes, counts)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ClientResult> {
        vec![
            ClientResult::from_parts(0, vec![vec![0.25, 1.0], vec![0.1, 0.2]], vec![3, 1]).unwrap(),
            ClientResult::from_parts(1, vec![vec![-0.5, 1e-17]], vec![7]).unwrap(),
        ]
    }

    #[test]
    fn json_round_trip() {
        let text = to_json(&sample()).unwrap();
        assert_eq!(from_json(&text).unwrap(), sample());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["d"], 2);
        assert_eq!(v[1]["nodes"][0]["m"], 7);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("client_id,M,w_0,w_1\n0,3,0.25,1\n"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), sample());
    }

    #[test]
    fn arbitrary_floats_survive_both_formats() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let nodes: Vec<Vec<f64>> = (0..500).map(|_| (0..4).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect()).collect();
        let counts = (0..500).map(|_| rng.random_range(1..1000)).collect();
        let results = vec![ClientResult::from_parts(4, nodes, counts).unwrap()];
        assert_eq!(from_json(&to_json(&results).unwrap()).unwrap(), results);
        let mut buf = Vec::new();
        write_csv(&mut buf, &results).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), results);
    }

    #[test]
    fn rejects_extra_fields_and_bad_widths() {
        assert!(from_json(r#"[{"client_id":0,"d":1,"nodes":[{"m":1,"w":[0.0]}],"raw":[[1.0]]}]"#).is_err());
        assert!(from_json(r#"[{"client_id":0,"d":2,"nodes":[{"m":1,"w":[0.0]}]}]"#).is_err());
        assert!(from_json(r#"[{"client_id":0,"d":1,"nodes":[{"m":0,"w":[0.0]}]}]"#).is_err());
    }
}
