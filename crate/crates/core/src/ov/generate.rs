//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`. Draw rules:
//!
//! * a random bit with density `p` consumes one `next_u64()` word `x` and is
//!   1 iff `(x >> 11) as f64 * 2^-53 < p`;
//! * vectors are drawn row by row, coordinates in increasing order;
//! * a shuffle of `0..len` is a Fisher-Yates pass from the top, swapping
//!   position `i` with `next_u64() % (i + 1)`.
//!
//! Coordinates whose value is forced consume no draw.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify, BitVector, ClassTag, OvError, OvInstance};

pub const DEFAULT_REJECTION_DENSITY: f64 = 0.75;
pub const DEFAULT_REJECTION_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoInstanceMode {
    /// Coordinate 0 is 1 in every vector; the rest are fair coin flips.
    ForcedOne,
    /// Redraw `gen_random`-style instances until one is class NONE with
    /// exactly `n` distinct vectors.
    Rejection { density: f64, max_attempts: usize },
}

impl NoInstanceMode {
    pub fn rejection() -> Self {
        NoInstanceMode::Rejection {
            density: DEFAULT_REJECTION_DENSITY,
            max_attempts: DEFAULT_REJECTION_ATTEMPTS,
        }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw_bit(rng: &mut ChaCha8Rng, density: f64) -> bool {
    let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    unit < density
}

fn draw_vector(rng: &mut ChaCha8Rng, l: usize, density: f64) -> BitVector {
    BitVector::from_bits((0..l).map(|_| draw_bit(rng, density)))
}

fn check_density(density: f64) -> Result<(), OvError> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(OvError::Parameter(format!(
            "density {density} outside [0, 1]"
        )))
    }
}

/// `n` i.i.d. vectors, deduplicated; the result may hold fewer than `n`.
pub fn gen_random(n: usize, l: usize, density: f64, seed: u64) -> Result<OvInstance, OvError> {
    if n == 0 || l == 0 {
        return Err(OvError::Parameter("n and l must be at least 1".into()));
    }
    check_density(density)?;
    let mut rng = rng_for(seed);
    OvInstance::new((0..n).map(|_| draw_vector(&mut rng, l, density)).collect())
}

/// An instance of exactly `n` distinct vectors with no orthogonal 4-tuple.
pub fn gen_no_instance(
    n: usize,
    l: usize,
    mode: NoInstanceMode,
    seed: u64,
) -> Result<OvInstance, OvError> {
    if n < 3 || l == 0 {
        return Err(OvError::Parameter("need n >= 3 and l >= 1".into()));
    }
    let mut rng = rng_for(seed);
    match mode {
        NoInstanceMode::ForcedOne => {
            if l <= 64 && (1u128 << (l - 1)) < n as u128 {
                return Err(OvError::Parameter(format!(
                    "only {} distinct vectors have coordinate 0 set at l = {l}",
                    1u128 << (l - 1)
                )));
            }
            let budget = 1000 * n;
            let mut vectors: Vec<BitVector> = Vec::with_capacity(n);
            for _ in 0..budget {
                let mut v = BitVector::zeros(l);
                v.set(0, true);
                for i in 1..l {
                    v.set(i, draw_bit(&mut rng, 0.5));
                }
                if !vectors.contains(&v) {
                    vectors.push(v);
                    if vectors.len() == n {
                        return OvInstance::new(vectors);
                    }
                }
            }
            Err(OvError::Exhausted(budget))
        }
        NoInstanceMode::Rejection {
            density,
            max_attempts,
        } => {
            check_density(density)?;
            for _ in 0..max_attempts {
                let candidate =
                    OvInstance::new((0..n).map(|_| draw_vector(&mut rng, l, density)).collect())?;
                if candidate.len() == n && classify(&candidate).tag == ClassTag::None {
                    return Ok(candidate);
                }
            }
            Err(OvError::Exhausted(max_attempts))
        }
    }
}

/// The seeded partition of `0..l` into four nonempty blocks used by
/// [`gen_planted_distinct`]. Each block is sorted; its first element is the
/// block's anchor coordinate.
pub fn planted_blocks(l: usize, seed: u64) -> Result<[Vec<usize>; 4], OvError> {
    blocks_from(&mut rng_for(seed), l)
}

fn blocks_from(rng: &mut ChaCha8Rng, l: usize) -> Result<[Vec<usize>; 4], OvError> {
    if l < 4 {
        return Err(OvError::Parameter(format!(
            "planting needs l >= 4, got {l}"
        )));
    }
    let mut order: Vec<usize> = (0..l).collect();
    for i in (1..l).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    let mut blocks: [Vec<usize>; 4] = Default::default();
    let mut rest = order.as_slice();
    for (g, block) in blocks.iter_mut().enumerate() {
        let size = l / 4 + usize::from(g < l % 4);
        let (head, tail) = rest.split_at(size);
        *block = head.to_vec();
        block.sort_unstable();
        rest = tail;
    }
    Ok(blocks)
}

/// Vectors 0..4 form a planted orthogonal quadruple: vector `g` is 0 exactly
/// on block `g`. The remaining vectors are 1 on every block anchor and random
/// elsewhere, so every pair and triple touching the plant keeps a common 1.
pub fn gen_planted_distinct(n: usize, l: usize, seed: u64) -> Result<OvInstance, OvError> {
    if n < 4 {
        return Err(OvError::Parameter(format!(
            "planting needs n >= 4, got {n}"
        )));
    }
    let mut rng = rng_for(seed);
    let blocks = blocks_from(&mut rng, l)?;
    let fillers = n - 4;
    if l - 4 < 64 && (1u128 << (l - 4)) < fillers as u128 {
        return Err(OvError::Parameter(format!(
            "l = {l} admits at most {} filler vectors, {fillers} requested",
            1u128 << (l - 4)
        )));
    }
    let mut vectors: Vec<BitVector> = blocks
        .iter()
        .map(|block| {
            let mut v = BitVector::ones(l);
            for &i in block {
                v.set(i, false);
            }
            v
        })
        .collect();
    let anchors: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let budget = 1000 * n;
    let mut draws = 0;
    while vectors.len() < n {
        if draws == budget {
            return Err(OvError::Exhausted(budget));
        }
        draws += 1;
        let mut v = BitVector::zeros(l);
        for i in 0..l {
            v.set(i, anchors.contains(&i) || draw_bit(&mut rng, 0.5));
        }
        if !vectors.contains(&v) {
            vectors.push(v);
        }
    }
    OvInstance::new(vectors)
}
