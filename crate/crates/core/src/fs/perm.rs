use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FsError;

/// Largest order whose `n!` fits in a `u64`.
pub const MAX_RANK_ORDER: usize = 20;

pub const fn factorial(n: usize) -> u64 {
    let mut f = 1u64;
    let mut i = 2;
    while i <= n {
        f *= i as u64;
        i += 1;
    }
    f
}

const FACTORIALS: [u64; MAX_RANK_ORDER + 1] = {
    let mut t = [1u64; MAX_RANK_ORDER + 1];
    let mut i = 1;
    while i <= MAX_RANK_ORDER {
        t[i] = t[i - 1] * i as u64;
        i += 1;
    }
    t
};

/// Position of a bijection in factorial-number-system (Lehmer code) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PermRank(pub u64);

/// Assignment of tokens (vertices of `Y`) to positions (vertices of `X`):
/// `images[x]` is the token sitting on position `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Bijection {
    images: Vec<u8>,
}

impl Bijection {
    pub fn new(images: Vec<usize>) -> Result<Self, FsError> {
        let n = images.len();
        if n == 0 || n > MAX_RANK_ORDER {
            return Err(FsError::InvalidBijection(format!(
                "order must be in 1..={MAX_RANK_ORDER}, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &t in &images {
            if t >= n || seen[t] {
                return Err(FsError::InvalidBijection(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[t] = true;
        }
        Ok(Bijection {
            images: images.into_iter().map(|t| t as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Bijection {
            images: (0..n as u8).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    /// Token on position `x`.
    pub fn token_at(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// Position holding token `t`.
    pub fn position_of(&self, t: usize) -> usize {
        self.images
            .iter()
            .position(|&s| s as usize == t)
            .expect("token in range")
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&t| t as usize).collect()
    }

    pub(crate) fn bytes(&self) -> &[u8] {
        &self.images
    }

    pub fn inverse(&self) -> Bijection {
        let mut inv = vec![0u8; self.order()];
        for (x, &t) in self.images.iter().enumerate() {
            inv[t as usize] = x as u8;
        }
        Bijection { images: inv }
    }

    /// `σ ∘ (a b)`: the tokens on positions `a` and `b` trade places.
    pub fn swap_positions(&self, a: usize, b: usize) -> Bijection {
        let mut s = self.clone();
        s.images.swap(a, b);
        s
    }

    /// `(u v) ∘ σ`: tokens `u` and `v` trade positions.
    pub fn transpose_tokens(&self, u: usize, v: usize) -> Bijection {
        let (a, b) = (self.position_of(u), self.position_of(v));
        self.swap_positions(a, b)
    }

    pub fn rank(&self) -> PermRank {
        PermRank(rank_bytes(&self.images))
    }

    pub fn unrank(rank: PermRank, n: usize) -> Result<Bijection, FsError> {
        if n == 0 || n > MAX_RANK_ORDER {
            return Err(FsError::InvalidBijection(format!(
                "order must be in 1..={MAX_RANK_ORDER}, got {n}"
            )));
        }
        if rank.0 >= FACTORIALS[n] {
            return Err(FsError::RankOutOfRange { rank: rank.0, n });
        }
        let mut images = vec![0u8; n];
        unrank_into(rank.0, &mut images);
        Ok(Bijection { images })
    }
}

impl TryFrom<Vec<usize>> for Bijection {
    type Error = FsError;
    fn try_from(v: Vec<usize>) -> Result<Self, FsError> {
        Bijection::new(v)
    }
}

impl From<Bijection> for Vec<usize> {
    fn from(b: Bijection) -> Self {
        b.images()
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bijection{:?}", self.images)
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(u8::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a comma-separated list of tokens, `images[0],images[1],...`.
impl FromStr for Bijection {
    type Err = FsError;
    fn from_str(s: &str) -> Result<Self, FsError> {
        let images = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| FsError::InvalidBijection(format!("bad token '{p}' in '{s}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Bijection::new(images)
    }
}

/// Lehmer rank: `sum_i d_i (n-1-i)!` with `d_i = #{j > i : p_j < p_i}`.
#[inline]
pub(crate) fn rank_bytes(perm: &[u8]) -> u64 {
    let n = perm.len();
    let mut seen: u32 = 0;
    let mut r = 0u64;
    for (i, &p) in perm.iter().enumerate() {
        let smaller_used = (seen & ((1u32 << p) - 1)).count_ones() as u64;
        r += (p as u64 - smaller_used) * FACTORIALS[n - 1 - i];
        seen |= 1 << p;
    }
    r
}

#[inline]
pub(crate) fn unrank_into(mut r: u64, out: &mut [u8]) {
    let n = out.len();
    let mut free: u32 = (1u32 << n) - 1;
    for (i, slot) in out.iter_mut().enumerate() {
        let f = FACTORIALS[n - 1 - i];
        let mut d = (r / f) as u32;
        r %= f;
        // d-th remaining symbol
        let mut bits = free;
        while d > 0 {
            bits &= bits - 1;
            d -= 1;
        }
        let p = bits.trailing_zeros();
        *slot = p as u8;
        free &= !(1 << p);
    }
}
