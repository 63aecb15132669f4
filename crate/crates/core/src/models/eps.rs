use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Rat;

/// Parameters of the triangular algebra `e_i * e_j = eps_{i,j} e_i`, where
/// `eps_{i,j} = eps_j` for `i > j` and `0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsSpec {
    pub m: usize,
    /// `eps_1, ..., eps_{m-1}`.
    pub eps: Vec<Rat>,
}

impl EpsSpec {
    pub fn new(eps: Vec<Rat>) -> Self {
        EpsSpec { m: eps.len() + 1, eps }
    }

    /// Random small rationals `p/q` with `|p| <= 5`, `1 <= q <= 4`.
    pub fn random(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eps = (1..m).map(|_| Rat::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())).collect();
        EpsSpec { m, eps }
    }

    /// `eps_{i,j}` for 1-based indices.
    pub fn eps_ij(&self, i: usize, j: usize) -> Rat {
        if i > j {
            self.eps[j - 1].clone()
        } else {
            Rat::zero()
        }
    }

    /// Structure constants: `table[i-1][j-1] = Some((c, i))` when `e_i * e_j = c e_i`.
    pub fn structure_constants(&self) -> Vec<Vec<Option<(Rat, usize)>>> {
        (1..=self.m)
            .map(|i| {
                (1..=self.m)
                    .map(|j| {
                        let c = self.eps_ij(i, j);
                        (!c.is_zero()).then_some((c, i))
                    })
                    .collect()
            })
            .collect()
    }
}
