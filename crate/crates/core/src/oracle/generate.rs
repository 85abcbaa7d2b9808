//! Seeded random trees.
//!
//! All draws come from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`,
//! so a `(family, n, seed)` triple always yields the same tree.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::max_matching;
use crate::oracle::enumerate::prufer_decode;
use crate::tree::Tree;

/// Rejection sampling gives up after this many draws.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RandomTree,
    Caterpillar,
    Lobster,
    LobsterApm,
    LobsterPm,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('-', "_").as_str() {
            "random_tree" | "random" => Family::RandomTree,
            "caterpillar" => Family::Caterpillar,
            "lobster" => Family::Lobster,
            "lobster_apm" => Family::LobsterApm,
            "lobster_pm" => Family::LobsterPm,
            other => return Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec { family, n, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("order must be at least 1".into()));
        }
        match self.family {
            Family::LobsterApm if self.n.is_multiple_of(2) => {
                Err(Error::InvalidSpec("lobster_apm needs an odd order".into()))
            }
            Family::LobsterPm if self.n % 2 == 1 => {
                Err(Error::InvalidSpec("lobster_pm needs an even order".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Uniform labeled tree via a uniform Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    if n <= 2 {
        return prufer_decode(&[], n).expect("n >= 1");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    prufer_decode(&seq, n).expect("valid Prüfer sequence")
}

/// Random spine, then vertices hung within `depth` (1 or 2) of it; ids are
/// shuffled at the end.
fn spine_tree<R: Rng + ?Sized>(n: usize, depth: usize, rng: &mut R) -> Tree {
    let spine = rng.random_range(1..=n);
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    // vertices a new vertex may hang from
    let mut hooks: Vec<usize> = (0..spine).collect();
    for v in spine..n {
        let at = hooks[rng.random_range(0..hooks.len())];
        edges.push((at, v));
        if depth == 2 && at < spine {
            hooks.push(v);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Tree::new(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect()).expect("spine tree")
}

pub fn random_caterpillar<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    spine_tree(n, 1, rng)
}

pub fn random_lobster<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    spine_tree(n, 2, rng)
}

/// Draws a tree of the requested family. Deterministic in the spec.
pub fn generate(spec: &GeneratorSpec) -> Result<Tree> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    match spec.family {
        Family::RandomTree => Ok(random_tree(n, &mut rng)),
        Family::Caterpillar => Ok(random_caterpillar(n, &mut rng)),
        Family::Lobster => Ok(random_lobster(n, &mut rng)),
        Family::LobsterApm | Family::LobsterPm => {
            let want = n / 2;
            for _ in 0..MAX_ATTEMPTS {
                let t = random_lobster(n, &mut rng);
                if max_matching(&t).len() == want {
                    return Ok(t);
                }
            }
            Err(Error::AttemptsExceeded(MAX_ATTEMPTS))
        }
    }
}
