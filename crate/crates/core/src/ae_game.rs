//! Simulator for the attrition-and-elimination game on a chain.
//!
//! Each round Bob deletes some points (attrition), then Alice picks a
//! surviving point uniformly and deletes it together with everything above it
//! (elimination). The game ends when the chain is empty.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bob {
    /// Never deletes; the game is random binary search.
    NoOp,
    /// Deletes the lower half (`floor(len / 2)` lowest points) every round.
    Halver,
    /// Round `r` deletes the listed positions of the current chain, counted
    /// from the bottom; positions past the end are ignored, and rounds past the
    /// script do nothing.
    Scripted(Vec<Vec<usize>>),
}

impl Bob {
    /// A script deleting position `r` in round `r`, for `rounds` rounds.
    pub fn staircase(rounds: usize) -> Bob {
        Bob::Scripted((0..rounds).map(|r| vec![r]).collect())
    }

    fn attrition(&self, round: usize, chain: &mut Vec<usize>) {
        match self {
            Bob::NoOp => {}
            Bob::Halver => {
                let half = chain.len() / 2;
                chain.drain(..half);
            }
            Bob::Scripted(script) => {
                if let Some(positions) = script.get(round) {
                    let mut kill = vec![false; chain.len()];
                    for &p in positions {
                        if p < kill.len() {
                            kill[p] = true;
                        }
                    }
                    let mut k = kill.iter();
                    chain.retain(|_| !k.next().copied().unwrap_or(false));
                }
            }
        }
    }
}

/// Plays one game on a chain of `m` points and returns the number of rounds.
pub fn ae_game(m: usize, bob: &Bob, seed: u64) -> Result<usize> {
    if m == 0 {
        return Err(Error::invalid("the chain must have at least one point"));
    }
    let mut rng = rng::stream(seed, 0);
    let mut chain: Vec<usize> = (0..m).collect();
    let mut rounds = 0;
    while !chain.is_empty() {
        rounds += 1;
        bob.attrition(rounds - 1, &mut chain);
        if chain.is_empty() {
            break;
        }
        let pick = rng.gen_range(0..chain.len());
        chain.truncate(pick);
    }
    Ok(rounds)
}
