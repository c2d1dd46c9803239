//! Graph sources: edge-list files or seeded generator specs.
//!
//! A source of the form `gen:<family>:<args...>` builds a graph in memory;
//! anything else is read as an edge-list file.
//!
//! | spec                     | graph                                   |
//! |--------------------------|-----------------------------------------|
//! | `gen:er:N:P`             | `G(N, P)` seeded by `--seed`            |
//! | `gen:er-weighted:N:P:W`  | `G(N, P)` with weights in `1..=W`       |
//! | `gen:trap:d:D:k`         | `K_{d,D}` plus `k` cliques of size d+2  |
//! | `gen:complete:N`         | `K_N`                                   |
//! | `gen:cycle:N`            | `C_N`                                   |
//! | `gen:path:N`             | `P_N`                                   |
//! | `gen:star:L`             | star with `L` leaves                    |
//! | `gen:petersen`           | Petersen graph                          |

use std::fs;
use std::str::FromStr;

use densekit::generators::{
    bipartite_with_cliques, complete, cycle, erdos_renyi, erdos_renyi_weighted, path, petersen,
    star,
};
use densekit::{parse_edge_list, DenseError, Graph, ParseOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: DenseError },
    #[error("bad generator spec {spec:?}: {msg}")]
    Generator { spec: String, msg: String },
}

pub fn load_graph(source: &str, opts: &ParseOptions, seed: u64) -> Result<Graph, InputError> {
    if let Some(rest) = source.strip_prefix("gen:") {
        return generate(source, rest, seed);
    }
    let text = fs::read_to_string(source).map_err(|e| InputError::Read {
        path: source.to_string(),
        source: e,
    })?;
    parse_edge_list(&text, opts).map_err(|e| InputError::Parse {
        path: source.to_string(),
        source: e,
    })
}

fn arg<T: FromStr>(spec: &str, parts: &[&str], i: usize) -> Result<T, InputError> {
    let bad = |msg: String| InputError::Generator {
        spec: spec.to_string(),
        msg,
    };
    let raw = parts
        .get(i)
        .ok_or_else(|| bad(format!("missing argument {i}")))?;
    raw.parse()
        .map_err(|_| bad(format!("cannot parse argument {raw:?}")))
}

fn generate(spec: &str, rest: &str, seed: u64) -> Result<Graph, InputError> {
    let parts: Vec<&str> = rest.split(':').collect();
    let bad = |msg: &str| InputError::Generator {
        spec: spec.to_string(),
        msg: msg.to_string(),
    };
    let expect = |k: usize| {
        if parts.len() == k + 1 {
            Ok(())
        } else {
            Err(bad(&format!("expected {k} arguments")))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probability = |p: f64| {
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(bad("probability must lie in [0, 1]"))
        }
    };
    let g = match parts[0] {
        "er" => {
            expect(2)?;
            let p = probability(arg(spec, &parts, 2)?)?;
            erdos_renyi(arg(spec, &parts, 1)?, p, &mut rng)
        }
        "er-weighted" => {
            expect(3)?;
            let p = probability(arg(spec, &parts, 2)?)?;
            let w: u32 = arg(spec, &parts, 3)?;
            if w == 0 {
                return Err(bad("maximum weight must be positive"));
            }
            erdos_renyi_weighted(arg(spec, &parts, 1)?, p, w, &mut rng)
        }
        "trap" => {
            expect(3)?;
            bipartite_with_cliques(
                arg(spec, &parts, 1)?,
                arg(spec, &parts, 2)?,
                arg(spec, &parts, 3)?,
            )
        }
        "complete" => {
            expect(1)?;
            complete(arg(spec, &parts, 1)?)
        }
        "cycle" => {
            expect(1)?;
            let n: usize = arg(spec, &parts, 1)?;
            if n < 3 {
                return Err(bad("cycle needs at least 3 vertices"));
            }
            cycle(n)
        }
        "path" => {
            expect(1)?;
            path(arg(spec, &parts, 1)?)
        }
        "star" => {
            expect(1)?;
            star(arg(spec, &parts, 1)?)
        }
        "petersen" => {
            expect(0)?;
            petersen()
        }
        _ => return Err(bad("unknown family")),
    };
    if g.m() == 0 {
        return Err(InputError::Parse {
            path: spec.to_string(),
            source: DenseError::EmptyGraph,
        });
    }
    Ok(g)
}
