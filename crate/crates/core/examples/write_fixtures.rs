//! Regenerate `fixtures/` from the reference catalog.
//!
//! cargo run --example write_fixtures

use std::path::Path;

use prn_core::catalog::{self, corpus};
use prn_core::morphisms::StateMap;
use prn_core::netio::{pbn_to_json, serialize_network, state_map_to_json, write_text};
use prn_core::network::{Pbn, Predictor};

fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

fn main() -> prn_core::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).expect("create fixtures dir");

    for (stem, net) in corpus() {
        write_text(dir.join(format!("{stem}.prn")), &serialize_network(&net))?;
    }

    let maps: Vec<(&str, StateMap, _, _)> = vec![
        (
            "identity",
            StateMap::new(&catalog::x1(), &catalog::xbar(), vec![0, 1, 2, 3])?,
            catalog::x1(),
            catalog::xbar(),
        ),
        (
            "fds-iso",
            catalog::fds_iso(),
            catalog::fds_x(),
            catalog::fds_y(),
        ),
        (
            "lift",
            catalog::lift(&catalog::chain4(), &catalog::chain8()),
            catalog::chain4(),
            catalog::chain8(),
        ),
        (
            "flatten",
            catalog::flatten(&catalog::chain8()),
            catalog::chain8(),
            catalog::chain8(),
        ),
        (
            "top",
            StateMap::new(&catalog::chain4(), &catalog::chain8_top(), vec![0, 1, 2, 3])?,
            catalog::chain4(),
            catalog::chain8_top(),
        ),
    ];
    for (stem, map, src, dst) in maps {
        write_text(
            dir.join(format!("{stem}.map.json")),
            &state_map_to_json(&map, &src, &dst),
        )?;
    }

    let pbn = Pbn::new(
        2,
        vec![
            vec![
                Predictor {
                    table: bits("0011"),
                    prob: 0.6,
                },
                Predictor {
                    table: bits("0110"),
                    prob: 0.4,
                },
            ],
            vec![
                Predictor {
                    table: bits("0101"),
                    prob: 0.5,
                },
                Predictor {
                    table: bits("1111"),
                    prob: 0.5,
                },
            ],
        ],
    )?;
    write_text(dir.join("two-gene.pbn.json"), &pbn_to_json(&pbn))?;

    write_text(
        dir.join("bad.prn"),
        "# probabilities sum to 0.9\nnetwork bad\nstates a b\nfunction f prob 0.5\n  a -> b\n  b -> a\nend\nfunction g prob 0.4\n  a -> a\n  b -> b\nend\n",
    )?;
    println!("wrote fixtures to {}", dir.display());
    Ok(())
}
