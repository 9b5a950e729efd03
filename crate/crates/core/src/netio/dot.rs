//! Graphviz export of state spaces with aggregated arc probabilities.

use std::fmt::Write;

use crate::markov::{transition_matrix, StochasticMatrix};
use crate::network::Prn;

use super::prob_label;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per state, one edge per positive entry, in state order.
pub fn matrix_to_dot(name: &str, t: &StochasticMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for id in t.order() {
        writeln!(out, "  {};", quote(id)).unwrap();
    }
    for (u, from) in t.order().iter().enumerate() {
        for (v, to) in t.order().iter().enumerate() {
            let p = t.get(u, v);
            if p > 0.0 {
                writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(from),
                    quote(to),
                    quote(&prob_label(p))
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(prn: &Prn) -> String {
    matrix_to_dot(prn.name(), &transition_matrix(prn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netio::parse_network;

    #[test]
    fn single_self_loop() {
        let prn = parse_network("network t\nstates a\nfunction f prob 1\na -> a\nend\n").unwrap();
        assert_eq!(
            export_dot(&prn),
            "digraph \"t\" {\n  \"a\";\n  \"a\" -> \"a\" [label=\"1\"];\n}\n"
        );
    }
}
