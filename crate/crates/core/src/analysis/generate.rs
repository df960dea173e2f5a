//! Deterministic sample generation for the verification passes.
//!
//! Everything is driven by a seeded ChaCha stream, so identical
//! (config, n, seed) triples reproduce identical samples byte for byte.
//! Roots come from a fixed 12-element Gaussian-rational pool chosen so
//! that expanded products stay inside the desk-scale factorization bound.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::FactoredPoly;
use crate::scalar::gaussian::{rat, GaussianRational};
use crate::scalar::mvpoly::MAX_VARS;
use crate::scalar::ScalarElem;

/// Settings for factored-sample generation.
#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Maximum degree (root count) of one sample.
    pub max_degree: usize,
    /// Root candidates.
    pub root_pool: Vec<ScalarElem>,
    /// Leading-coefficient candidates; all nonzero.
    pub lead_pool: Vec<ScalarElem>,
}

fn gr(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> ScalarElem {
    ScalarElem::from_gaussian(GaussianRational::new(rat(re_n, re_d), rat(im_n, im_d)))
}

impl Default for GenConfig {
    fn default() -> Self {
        let root_pool = vec![
            ScalarElem::from_int(0),
            ScalarElem::from_int(1),
            ScalarElem::from_int(-1),
            ScalarElem::from_int(2),
            ScalarElem::from_int(-2),
            gr(1, 2, 0, 1),
            gr(-1, 2, 0, 1),
            ScalarElem::i(),
            -ScalarElem::i(),
            gr(1, 1, 1, 1),
            gr(-1, 1, -1, 1),
            gr(2, 1, 1, 1),
        ];
        let lead_pool = vec![
            ScalarElem::from_int(1),
            ScalarElem::from_int(-1),
            ScalarElem::from_int(2),
            ScalarElem::i(),
            gr(1, 1, 1, 1),
            gr(1, 2, 0, 1),
        ];
        Self {
            max_degree: 6,
            root_pool,
            lead_pool,
        }
    }
}

impl GenConfig {
    /// The seeded stream all passes draw from.
    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// One random factored polynomial: pool lead, 0..=max_degree pool roots.
    pub fn sample_factored(&self, rng: &mut ChaCha8Rng) -> FactoredPoly {
        let degree = rng.gen_range(0..=self.max_degree);
        let lead = self.lead_pool[rng.gen_range(0..self.lead_pool.len())].clone();
        let roots = (0..degree)
            .map(|_| self.root_pool[rng.gen_range(0..self.root_pool.len())].clone())
            .collect();
        FactoredPoly::new(lead, roots).expect("pool leads are nonzero")
    }

    /// One random Gaussian-rational scalar: a pool element, a sum or
    /// product of two, or a pool element shifted by a small integer.
    pub fn sample_scalar(&self, rng: &mut ChaCha8Rng) -> ScalarElem {
        let pools: Vec<&ScalarElem> = self.root_pool.iter().chain(&self.lead_pool).collect();
        let pick = |rng: &mut ChaCha8Rng| pools[rng.gen_range(0..pools.len())].clone();
        match rng.gen_range(0..4) {
            0 => pick(rng),
            1 => pick(rng) + pick(rng),
            2 => pick(rng) * pick(rng),
            _ => pick(rng) + ScalarElem::from_int(rng.gen_range(-3..=3)),
        }
    }

    /// One random scalar involving the transcendentals `t1..tm`:
    /// a degree-≤2 polynomial in one variable with small integer
    /// coefficients, occasionally shifted by a pool element.
    pub fn sample_scalar_with_vars(&self, rng: &mut ChaCha8Rng, m: usize) -> ScalarElem {
        let idx = rng.gen_range(0..m.clamp(1, MAX_VARS));
        let var = ScalarElem::var(idx).expect("index below MAX_VARS");
        let small = |rng: &mut ChaCha8Rng| ScalarElem::from_int(rng.gen_range(-3..=3));
        let square = &var * &var;
        let mut out = square * small(rng) + var * small(rng) + small(rng);
        if rng.gen_bool(0.5) {
            out = out + self.root_pool[rng.gen_range(0..self.root_pool.len())].clone();
        }
        out
    }

    /// The sampling pool for fingerprints: roots, their negatives (the
    /// canonical form evaluates ψ and φ̃ at −z_j), and the leads.
    pub fn fingerprint_points(&self) -> Vec<ScalarElem> {
        let mut points: Vec<ScalarElem> = Vec::new();
        let mut push = |x: ScalarElem| {
            if !points.contains(&x) {
                points.push(x);
            }
        };
        for r in &self.root_pool {
            push(r.clone());
            push(-r);
        }
        for a in &self.lead_pool {
            push(a.clone());
        }
        points
    }
}
