//! Classical post-processing: an i.i.d. bit-flip channel, a simple XOR
//! compare-discard protocol, the Cascade protocol with Binary bisection, and
//! the pairwise-XOR privacy amplification step.
//!
//! Leakage accounting counts parity messages: every block or sub-block
//! parity disclosed on the classical channel is one leaked bit. Slot indices
//! carry no key information under the i.i.d. error model and are free.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A key as a sequence of bits.
pub type BitString = Vec<u8>;

/// Which slots of a string an adversary knows; used to demonstrate privacy
/// amplification.
pub type KnowledgeMask = Vec<bool>;

/// Summary of one reconciliation run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReconciliationReport {
    /// Bits still differing after the protocol.
    pub residual_errors: usize,
    /// Parity messages disclosed on the classical channel.
    pub leaked_bits: usize,
    /// Passes (or rounds) executed.
    pub passes: usize,
    /// Length of the strings when the protocol finished.
    pub final_length: usize,
}

/// Draws a random bit string of length n.
pub fn random_bits(n: usize, seed: u64) -> BitString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(0..2u8)).collect()
}

/// Flips each bit independently with probability p.
pub fn flip_channel(s: &[u8], p: f64, seed: u64) -> Result<BitString> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(s.iter()
        .map(|&b| if rng.gen_bool(p) { b ^ 1 } else { b })
        .collect())
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// The simple compare-discard protocol: each round pairs up random slots,
/// both sides disclose the pair XOR, matching pairs keep the first slot,
/// mismatching pairs are dropped entirely.
///
/// Returns the shortened strings (equal length, kept slots identical on both
/// sides) and the report. Each compared pair costs two parity messages.
pub fn simple_xor_protocol(
    a: &[u8],
    b: &[u8],
    rounds: usize,
    seed: u64,
) -> Result<(BitString, BitString, ReconciliationReport)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alice: BitString = a.to_vec();
    let mut bob: BitString = b.to_vec();
    let mut leaked = 0usize;

    for _ in 0..rounds {
        let mut order: Vec<usize> = (0..alice.len()).collect();
        order.shuffle(&mut rng);
        let mut keep_alice = Vec::with_capacity(alice.len() / 2 + 1);
        let mut keep_bob = Vec::with_capacity(bob.len() / 2 + 1);
        let mut chunks = order.chunks_exact(2);
        for pair in &mut chunks {
            let (i, j) = (pair[0], pair[1]);
            leaked += 2;
            if alice[i] ^ alice[j] == bob[i] ^ bob[j] {
                keep_alice.push(alice[i]);
                keep_bob.push(bob[i]);
            }
        }
        // an odd slot out survives untouched
        if let [left] = *chunks.remainder() {
            keep_alice.push(alice[left]);
            keep_bob.push(bob[left]);
        }
        alice = keep_alice;
        bob = keep_bob;
        if alice.is_empty() {
            break;
        }
    }

    let report = ReconciliationReport {
        residual_errors: hamming(&alice, &bob),
        leaked_bits: leaked,
        passes: rounds,
        final_length: alice.len(),
    };
    Ok((alice, bob, report))
}

fn parity(bits: &[u8], positions: &[usize]) -> u8 {
    positions.iter().fold(0u8, |acc, &i| acc ^ bits[i]) & 1
}

/// Block partitions for every pass: pass 0 in natural order, later passes
/// under seeded shuffles, with block sizes doubling each pass.
struct PassLayout {
    /// blocks[pass][block] = positions
    blocks: Vec<Vec<Vec<usize>>>,
    /// block_of[pass][position] = block index
    block_of: Vec<Vec<usize>>,
}

fn build_layout(n: usize, k1: usize, passes: usize, rng: &mut ChaCha8Rng) -> PassLayout {
    let mut blocks = Vec::with_capacity(passes);
    let mut block_of = Vec::with_capacity(passes);
    for pass in 0..passes {
        let block_size = (k1 << pass).min(n).max(1);
        let mut order: Vec<usize> = (0..n).collect();
        if pass > 0 {
            order.shuffle(rng);
        }
        let mut pass_blocks = Vec::new();
        for chunk in order.chunks(block_size) {
            pass_blocks.push(chunk.to_vec());
        }
        let mut lookup = vec![0usize; n];
        for (bi, block) in pass_blocks.iter().enumerate() {
            for &pos in block {
                lookup[pos] = bi;
            }
        }
        blocks.push(pass_blocks);
        block_of.push(lookup);
    }
    PassLayout { blocks, block_of }
}

/// Binary bisection on one mismatching block: Alice repeatedly discloses the
/// parity of the first half, and the erroneous bit in Bob's block is flipped
/// once the block narrows to a single position. Returns (position, parities
/// disclosed).
fn binary_correct(alice: &[u8], bob: &mut [u8], block: &[usize]) -> (usize, usize) {
    let mut lo = 0usize;
    let mut hi = block.len();
    let mut leaked = 0usize;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        leaked += 1;
        let alice_parity = parity(alice, &block[lo..mid]);
        let bob_parity = parity(bob, &block[lo..mid]);
        if alice_parity != bob_parity {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let pos = block[lo];
    bob[pos] ^= 1;
    (pos, leaked)
}

/// Re-checks the parity of every treated block containing `position` and
/// updates the pending set of mismatching (size, pass, block) keys.
fn refresh_pending(
    a: &[u8],
    bob: &[u8],
    layout: &PassLayout,
    pending: &mut BTreeSet<(usize, usize, usize)>,
    position: usize,
    upto: usize,
) {
    for pass in 0..=upto {
        let bi = layout.block_of[pass][position];
        let block = &layout.blocks[pass][bi];
        let key = (block.len(), pass, bi);
        if parity(a, block) != parity(bob, block) {
            pending.insert(key);
        } else {
            pending.remove(&key);
        }
    }
}

/// The Cascade protocol. Corrects Bob's string toward Alice's; Alice's
/// string is never modified. Pass 1 uses block size k1 = ceil(0.73 / p_est),
/// each later pass shuffles and doubles the block size. Every correction is
/// cascaded back through earlier passes until no treated block has an odd
/// error count.
pub fn cascade(
    a: &[u8],
    b: &[u8],
    p_est: f64,
    passes: usize,
    seed: u64,
) -> Result<(BitString, ReconciliationReport)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if !(p_est > 0.0 && p_est <= 0.25) {
        return Err(Error::OutOfDomain {
            value: p_est,
            domain: "(0, 0.25]",
        });
    }
    if passes == 0 {
        return Err(Error::InvalidArgument("need at least one pass".into()));
    }
    let n = a.len();
    let mut bob = b.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k1 = (0.73 / p_est).ceil() as usize;
    let layout = build_layout(n, k1.max(1), passes, &mut rng);
    let mut leaked = 0usize;

    for pass in 0..passes {
        // Alice sends one parity per block of this pass.
        leaked += layout.blocks[pass].len();
        for bi in 0..layout.blocks[pass].len() {
            let block = &layout.blocks[pass][bi];
            if parity(a, block) == parity(&bob, block) {
                continue;
            }
            // Mismatching block: correct one bit, then chase the parity
            // flips through all previously treated passes, always taking
            // the smallest pending block.
            let (pos, bisect_leak) = binary_correct(a, &mut bob, block);
            leaked += bisect_leak;
            let mut pending: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
            refresh_pending(a, &bob, &layout, &mut pending, pos, pass);
            while let Some(&(_, epass, ebi)) = pending.iter().next() {
                let eblock = &layout.blocks[epass][ebi];
                if parity(a, eblock) == parity(&bob, eblock) {
                    pending.remove(&(eblock.len(), epass, ebi));
                    continue;
                }
                let (pos, bisect_leak) = binary_correct(a, &mut bob, eblock);
                leaked += bisect_leak;
                refresh_pending(a, &bob, &layout, &mut pending, pos, pass);
            }
        }
    }

    let report = ReconciliationReport {
        residual_errors: hamming(a, &bob),
        leaked_bits: leaked,
        passes,
        final_length: n,
    };
    Ok((bob, report))
}

/// One privacy-amplification step: `pairs` disjoint random slot pairs each
/// collapse to their XOR. The combined bit is known to the adversary only
/// if both source bits were known. The string shortens by `pairs`.
pub fn privacy_amplify(
    a: &[u8],
    mask: &[bool],
    pairs: usize,
    seed: u64,
) -> Result<(BitString, KnowledgeMask)> {
    if a.len() != mask.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: mask.len(),
        });
    }
    if pairs * 2 > a.len() {
        return Err(Error::InvalidArgument(format!(
            "{pairs} pairs need {} slots, string has {}",
            pairs * 2,
            a.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.shuffle(&mut rng);

    // The combined bit lands in the smaller slot of each pair; the larger
    // slot is dropped. Untouched slots pass through in place.
    let mut value: Vec<Option<u8>> = a.iter().map(|&b| Some(b)).collect();
    let mut known: Vec<bool> = mask.to_vec();
    for pair in order[..2 * pairs].chunks_exact(2) {
        let (i, j) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        value[i] = Some(a[i] ^ a[j]);
        value[j] = None;
        known[i] = mask[i] && mask[j];
    }
    let mut out_bits = Vec::with_capacity(a.len() - pairs);
    let mut out_mask = Vec::with_capacity(a.len() - pairs);
    for (slot, bit) in value.into_iter().enumerate() {
        if let Some(bit) = bit {
            out_bits.push(bit);
            out_mask.push(known[slot]);
        }
    }
    Ok((out_bits, out_mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_channel_edge_probabilities() {
        let s = random_bits(200, 1);
        let same = flip_channel(&s, 0.0, 2).unwrap();
        assert_eq!(s, same);
        let flipped = flip_channel(&s, 1.0, 3).unwrap();
        assert!(s.iter().zip(&flipped).all(|(x, y)| x ^ 1 == *y));
        assert!(flip_channel(&s, 1.5, 4).is_err());
    }

    #[test]
    fn flip_channel_concentrates() {
        let n = 100_000;
        let s = random_bits(n, 5);
        let out = flip_channel(&s, 0.05, 6).unwrap();
        let rate = hamming(&s, &out) as f64 / n as f64;
        assert!((rate - 0.05).abs() < 0.005, "rate = {rate}");
    }

    #[test]
    fn flip_channel_is_deterministic() {
        let s = random_bits(1000, 7);
        assert_eq!(
            flip_channel(&s, 0.3, 8).unwrap(),
            flip_channel(&s, 0.3, 8).unwrap()
        );
    }

    #[test]
    fn simple_xor_error_free_round_halves() {
        let a = random_bits(1024, 10);
        let (alice, bob, report) = simple_xor_protocol(&a, &a, 1, 11).unwrap();
        assert_eq!(alice.len(), 512);
        assert_eq!(alice, bob);
        assert_eq!(report.residual_errors, 0);
        assert_eq!(report.leaked_bits, 1024);
        assert_eq!(report.final_length, 512);
    }

    #[test]
    fn simple_xor_single_error_survival() {
        // an error in a compared pair always produces a mismatch and is
        // discarded; survival only happens via the odd slot out or the kept
        // first slot of an error-free pair, so over many seeds the survival
        // rate stays at or below one half
        let n = 64;
        let trials = 10_000;
        let mut survived = 0usize;
        for seed in 0..trials {
            let a = vec![0u8; n];
            let mut b = a.clone();
            b[(seed as usize * 17) % n] ^= 1;
            let (alice, bob, _) = simple_xor_protocol(&a, &b, 1, seed).unwrap();
            if hamming(&alice, &bob) > 0 {
                survived += 1;
            }
        }
        let rate = survived as f64 / trials as f64;
        assert!(rate <= 0.5 + 0.02, "survival rate = {rate}");
    }

    #[test]
    fn simple_xor_residual_rate_decreases_per_round() {
        let n = 20_000;
        let a = random_bits(n, 20);
        let b = flip_channel(&a, 0.1, 21).unwrap();
        let mut prev_rate = 0.1f64;
        for rounds in 1..=3 {
            let (alice, bob, report) = simple_xor_protocol(&a, &b, rounds, 22).unwrap();
            let rate = report.residual_errors as f64 / alice.len().max(1) as f64;
            assert!(rate < prev_rate, "round {rounds}: {rate} !< {prev_rate}");
            assert_eq!(alice.len(), bob.len());
            prev_rate = rate;
        }
    }

    #[test]
    fn simple_xor_kept_positions_match() {
        let a = random_bits(512, 30);
        let b = flip_channel(&a, 0.05, 31).unwrap();
        let (alice, bob, _) = simple_xor_protocol(&a, &b, 2, 32).unwrap();
        assert_eq!(alice.len(), bob.len());
    }

    #[test]
    fn simple_xor_rejects_length_mismatch() {
        assert!(simple_xor_protocol(&[0, 1], &[0], 1, 0).is_err());
    }

    #[test]
    fn cascade_identical_strings_leak_only_block_parities() {
        let a = random_bits(1000, 40);
        let (bob, report) = cascade(&a, &a, 0.05, 4, 41).unwrap();
        assert_eq!(bob, a);
        assert_eq!(report.residual_errors, 0);
        // k1 = ceil(0.73/0.05) = 15; block counts per pass for sizes 15, 30, 60, 120
        let expected: usize = [15usize, 30, 60, 120]
            .iter()
            .map(|k| (1000 + k - 1) / k)
            .sum();
        assert_eq!(report.leaked_bits, expected);
    }

    #[test]
    fn cascade_single_error_cost_is_logarithmic() {
        let n = 1500;
        let a = random_bits(n, 50);
        let mut b = a.clone();
        b[731] ^= 1;
        let (bob, report) = cascade(&a, &b, 0.05, 1, 51).unwrap();
        assert_eq!(bob, a);
        let k1 = 15usize;
        let block_parities = (n + k1 - 1) / k1;
        let max_bisect = (k1 as f64).log2().ceil() as usize + 1;
        assert!(report.leaked_bits <= block_parities + max_bisect);
    }

    #[test]
    fn cascade_leaves_even_errors_after_pass_one() {
        let n = 2000;
        let a = random_bits(n, 60);
        let b = flip_channel(&a, 0.05, 61).unwrap();
        let (bob, _) = cascade(&a, &b, 0.05, 1, 62).unwrap();
        // reconstruct the pass-1 partition: natural order, k1 = 15
        for chunk in (0..n).collect::<Vec<_>>().chunks(15) {
            let errors = chunk.iter().filter(|&&i| a[i] != bob[i]).count();
            assert_eq!(errors % 2, 0, "odd error count in a pass-1 block");
        }
    }

    #[test]
    fn cascade_corrects_and_respects_shannon_floor() {
        let n = 10_000;
        let mut clean = 0usize;
        for seed in 0..20u64 {
            let a = random_bits(n, 1000 + seed);
            let b = flip_channel(&a, 0.05, 2000 + seed).unwrap();
            let (bob, report) = cascade(&a, &b, 0.05, 4, 3000 + seed).unwrap();
            assert_eq!(report.final_length, n);
            assert!(
                report.leaked_bits as f64 >= crate::info::shannon_reconciliation_bound(n, 0.05)
            );
            if report.residual_errors == 0 {
                assert_eq!(bob, a);
                clean += 1;
            }
        }
        assert!(clean >= 19, "only {clean}/20 runs converged");
    }

    #[test]
    fn cascade_never_touches_alice() {
        let a = random_bits(500, 70);
        let b = flip_channel(&a, 0.08, 71).unwrap();
        let a_copy = a.clone();
        let _ = cascade(&a, &b, 0.08, 3, 72).unwrap();
        assert_eq!(a, a_copy);
    }

    #[test]
    fn cascade_validates_inputs() {
        assert!(cascade(&[0, 1], &[0], 0.05, 4, 0).is_err());
        assert!(cascade(&[0, 1], &[0, 1], 0.0, 4, 0).is_err());
        assert!(cascade(&[0, 1], &[0, 1], 0.3, 4, 0).is_err());
        assert!(cascade(&[0, 1], &[0, 1], 0.05, 0, 0).is_err());
    }

    #[test]
    fn privacy_amplify_xor_knowledge_rule() {
        let bits = vec![1, 0, 1, 1];
        let all_known = vec![true; 4];
        let (out, mask) = privacy_amplify(&bits, &all_known, 2, 80).unwrap();
        assert_eq!(out.len(), 2);
        assert!(mask.iter().all(|&k| k));

        let one_known = vec![true, false, false, false];
        let (_, mask) = privacy_amplify(&bits, &one_known, 2, 81).unwrap();
        assert!(mask.iter().all(|&k| !k));
    }

    #[test]
    fn privacy_amplify_known_fraction_shrinks_quadratically() {
        let n = 10_000;
        let bits = random_bits(n, 90);
        let mask: Vec<bool> = random_bits(n, 91).into_iter().map(|b| b == 1).collect();
        let before = mask.iter().filter(|&&k| k).count() as f64 / n as f64;
        assert!((before - 0.5).abs() < 0.03);
        let (out, out_mask) = privacy_amplify(&bits, &mask, n / 2, 92).unwrap();
        assert_eq!(out.len(), n / 2);
        let after = out_mask.iter().filter(|&&k| k).count() as f64 / out.len() as f64;
        assert!((after - 0.25).abs() < 0.03, "known fraction = {after}");
    }

    #[test]
    fn privacy_amplify_known_fraction_never_increases() {
        let n = 4096;
        let bits = random_bits(n, 95);
        let mask: Vec<bool> = random_bits(n, 96).into_iter().map(|b| b == 1).collect();
        let before = mask.iter().filter(|&&k| k).count() as f64 / n as f64;
        for pairs in [1, 10, n / 4, n / 2] {
            let (out, out_mask) = privacy_amplify(&bits, &mask, pairs, 97).unwrap();
            let after = out_mask.iter().filter(|&&k| k).count() as f64 / out.len() as f64;
            assert!(after <= before + 1e-12);
        }
    }

    #[test]
    fn privacy_amplify_validates_inputs() {
        assert!(privacy_amplify(&[0, 1], &[true], 1, 0).is_err());
        assert!(privacy_amplify(&[0, 1], &[true, false], 2, 0).is_err());
    }
}
