//! Seeded random generators shared by the integration suites.

#![allow(dead_code)]

use ncdomain::fock::CMat;
use ncdomain::symbol::rat::{rat, Rat};
use ncdomain::symbol::{Symbol, Witness, Word};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive rational with numerator and denominator in `1..=9`.
pub fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

pub fn random_word(rng: &mut ChaCha8Rng, arity: usize, len: usize) -> Word {
    Word::from_letters(
        (0..len)
            .map(|_| rng.gen_range(1..=arity as u32))
            .collect::<Vec<_>>(),
    )
}

/// A random valid symbol: every degree-1 word with a random coefficient,
/// plus up to `extra` random words of length `2..=max_deg`.
pub fn random_symbol(rng: &mut ChaCha8Rng, arity: usize, max_deg: usize, extra: usize) -> Symbol {
    let mut terms: Vec<(Word, Rat)> = (1..=arity as u32)
        .map(|j| (Word::from_letters(vec![j]), random_rat(rng)))
        .collect();
    if max_deg >= 2 {
        for _ in 0..extra {
            let len = rng.gen_range(2..=max_deg);
            terms.push((random_word(rng, arity, len), random_rat(rng)));
        }
    }
    Symbol::validate(arity, terms).expect("construction satisfies the invariants")
}

pub fn random_witness(rng: &mut ChaCha8Rng, arity: usize) -> Witness {
    let mut sigma: Vec<u32> = (1..=arity as u32).collect();
    sigma.shuffle(rng);
    let lambda = (0..arity).map(|_| random_rat(rng)).collect();
    Witness::new(sigma, lambda).expect("random witness is valid")
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-1.0..1.0) * scale,
        rng.gen_range(-1.0..1.0) * scale,
    )
}

/// Uniform-direction point with norm at most `max_norm`.
pub fn random_ball_point(rng: &mut ChaCha8Rng, n: usize, max_norm: f64) -> Vec<Complex64> {
    loop {
        let coords: Vec<Complex64> = (0..n).map(|_| random_complex(rng, 1.0)).collect();
        let norm = coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let target = rng.gen_range(0.0..max_norm);
            return coords.iter().map(|z| z * (target / norm)).collect();
        }
    }
}

/// A scalar point strictly inside the domain of `f`: random direction,
/// scaled to a fraction of the boundary radius along it.
pub fn random_interior_point(rng: &mut ChaCha8Rng, f: &Symbol) -> Vec<Complex64> {
    let direction = random_ball_point(rng, f.arity(), 1.0);
    let direction: Vec<Complex64> = if direction.iter().all(|z| z.norm_sqr() < 1e-12) {
        (0..f.arity()).map(|_| Complex64::ONE).collect()
    } else {
        direction
    };
    let r = ncdomain::geometry::boundary_radius(f, &direction, 1e-12).expect("radius exists");
    let norm = direction.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let fraction = rng.gen_range(0.15..0.85);
    direction
        .iter()
        .map(|z| z * (r * fraction / norm))
        .collect()
}

/// Random unitary via Gram-Schmidt on a random complex matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|_| (0..n).map(|_| random_complex(rng, 1.0)).collect())
            .collect();
        let mut ok = true;
        for k in 0..n {
            for prev in 0..k {
                let proj: Complex64 = cols[k]
                    .iter()
                    .zip(&cols[prev])
                    .map(|(a, b)| a * b.conj())
                    .sum();
                let corrections: Vec<Complex64> =
                    cols[prev].iter().map(|&p| proj * p).collect();
                for (x, correction) in cols[k].iter_mut().zip(corrections) {
                    *x -= correction;
                }
            }
            let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            for z in cols[k].iter_mut() {
                *z /= norm;
            }
        }
        if !ok {
            continue;
        }
        let mut m = CMat::zeros(n);
        for (c, col) in cols.iter().enumerate() {
            for (r, &z) in col.iter().enumerate() {
                m[(r, c)] = z;
            }
        }
        return m;
    }
}

pub fn random_unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}
