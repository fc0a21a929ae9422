//! SU(3) tensor products: the number of irreducible summands in
//! `r1 (x) r2`, computed by the Littlewood-Richardson rule over
//! three-row partitions, with an independent weight-system route
//! (Freudenthal multiplicities plus highest-weight subtraction) used as
//! the cross-check oracle.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

/// An SU(3) irreducible representation by its Dynkin labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Su3Irrep {
    pub a: u32,
    pub b: u32,
}

/// Desk-scale bound on the Dynkin labels of task inputs.
pub const SU3_WEIGHT_BOUND: u32 = 8;

impl Su3Irrep {
    pub fn new(a: u32, b: u32) -> Su3Irrep {
        Su3Irrep { a, b }
    }

    /// Weyl dimension formula: `(a+1)(b+1)(a+b+2)/2`.
    pub fn dim(&self) -> u64 {
        let (a, b) = (u64::from(self.a), u64::from(self.b));
        (a + 1) * (b + 1) * (a + b + 2) / 2
    }

    /// The three-row partition `(a+b, b, 0)` of the corresponding
    /// GL(3) polynomial representation.
    fn partition(&self) -> [u32; 3] {
        [self.a + self.b, self.b, 0]
    }

    fn from_partition(p: [u32; 3]) -> Su3Irrep {
        Su3Irrep {
            a: p[0] - p[1],
            b: p[1] - p[2],
        }
    }
}

/// `A/B` is a horizontal strip exactly when the parts interlace.
fn interlaces(outer: [u32; 3], inner: [u32; 3]) -> bool {
    outer[0] >= inner[0]
        && inner[0] >= outer[1]
        && outer[1] >= inner[1]
        && inner[1] >= outer[2]
        && outer[2] >= inner[2]
}

/// Checks the lattice-word condition of the two-letter filling
/// `lambda -> mid -> nu` (1s fill `mid/lambda`, 2s fill `nu/mid`).
fn lattice_word_ok(lambda: [u32; 3], mid: [u32; 3], nu: [u32; 3]) -> bool {
    // reading right-to-left, top-to-bottom: after the 2s of row i the
    // running counts must still satisfy #1 >= #2
    let mut ones = 0u32;
    let mut twos = 0u32;
    for row in 0..3 {
        twos += nu[row] - mid[row];
        if twos > ones {
            return false;
        }
        ones += mid[row] - lambda[row];
    }
    true
}

/// Decomposes `r1 (x) r2` into its irreducible summands (with
/// multiplicity, as repeats) by Littlewood-Richardson counting.
pub fn su3_tensor_decompose(r1: Su3Irrep, r2: Su3Irrep) -> Result<Vec<Su3Irrep>> {
    if r1.a > SU3_WEIGHT_BOUND
        || r1.b > SU3_WEIGHT_BOUND
        || r2.a > SU3_WEIGHT_BOUND
        || r2.b > SU3_WEIGHT_BOUND
    {
        return Err(Error::InvalidArgument(alloc::format!(
            "Dynkin labels capped at {SU3_WEIGHT_BOUND} for the task"
        )));
    }
    let lambda = r1.partition();
    let mu = r2.partition();
    let total: u32 = lambda.iter().sum::<u32>() + mu.iter().sum::<u32>();

    let mut out = Vec::new();
    // add mu[0] boxes labeled 1 as a horizontal strip
    let lam_sum: u32 = lambda.iter().sum();
    for mid0 in lambda[0]..=lambda[0] + mu[0] {
        for mid1 in lambda[1]..=mid0 {
            let placed = (mid0 - lambda[0]) + (mid1 - lambda[1]);
            if placed > mu[0] {
                continue;
            }
            let mid2 = lambda[2] + (mu[0] - placed);
            let mid = [mid0, mid1, mid2];
            if mid.iter().sum::<u32>() != lam_sum + mu[0] || !interlaces(mid, lambda) {
                continue;
            }
            // add mu[1] boxes labeled 2 as a horizontal strip
            for nu0 in mid0..=mid0 + mu[1] {
                for nu1 in mid1..=nu0 {
                    let placed2 = (nu0 - mid0) + (nu1 - mid1);
                    if placed2 > mu[1] {
                        continue;
                    }
                    let nu2 = mid2 + (mu[1] - placed2);
                    let nu = [nu0, nu1, nu2];
                    if nu.iter().sum::<u32>() != total || !interlaces(nu, mid) {
                        continue;
                    }
                    if nu[1] > nu[0] || nu[2] > nu[1] {
                        continue;
                    }
                    if lattice_word_ok(lambda, mid, nu) {
                        out.push(Su3Irrep::from_partition(nu));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Number of terms (with multiplicity) in the decomposition.
pub fn su3_tensor_terms(r1: Su3Irrep, r2: Su3Irrep) -> Result<usize> {
    let decomposition = su3_tensor_decompose(r1, r2)?;
    debug_assert_eq!(
        decomposition.iter().map(Su3Irrep::dim).sum::<u64>(),
        r1.dim() * r2.dim(),
        "summand dimensions must add up"
    );
    Ok(decomposition.len())
}

// ---------------------------------------------------------------------
// Independent route: weight systems via Freudenthal's recursion, then
// repeated highest-weight subtraction. Used to cross-check the
// Littlewood-Richardson counting.
// ---------------------------------------------------------------------

/// Weight in the fundamental-weight basis.
type Weight = (i32, i32);

/// `2/3 p1 p2 + 1/3 (p1 q2 + q1 p2) + 2/3 q1 q2`, scaled by 3 to stay
/// in integers.
fn inner3(u: Weight, v: Weight) -> i32 {
    2 * u.0 * v.0 + u.0 * v.1 + u.1 * v.0 + 2 * u.1 * v.1
}

const SIMPLE_ROOTS: [Weight; 2] = [(2, -1), (-1, 2)];
const POSITIVE_ROOTS: [Weight; 3] = [(2, -1), (-1, 2), (1, 1)];

/// Full weight system of `[a, b]` with multiplicities, by Freudenthal's
/// recursion from the highest weight.
pub fn weight_system(rep: Su3Irrep) -> BTreeMap<Weight, u64> {
    let top: Weight = (rep.a as i32, rep.b as i32);
    let rho: Weight = (1, 1);
    let top_rho = (top.0 + rho.0, top.1 + rho.1);
    let norm_top = inner3(top_rho, top_rho);

    let mut mults: BTreeMap<Weight, u64> = BTreeMap::new();
    mults.insert(top, 1);
    // visit candidates level by level (levels = boxes of simple roots
    // subtracted)
    let max_level = (rep.a + rep.b) as i32 * 2 + 2;
    let mut frontier = alloc::vec![top];
    for _ in 0..max_level {
        let mut next = Vec::new();
        for &w in &frontier {
            for root in SIMPLE_ROOTS {
                let cand = (w.0 - root.0, w.1 - root.1);
                if mults.contains_key(&cand) {
                    continue;
                }
                // Freudenthal: multiplicity from the weights above
                let cand_rho = (cand.0 + rho.0, cand.1 + rho.1);
                let denom = norm_top - inner3(cand_rho, cand_rho);
                if denom <= 0 {
                    continue;
                }
                let mut acc: i64 = 0;
                for alpha in POSITIVE_ROOTS {
                    let mut k = 1;
                    loop {
                        let up = (cand.0 + k * alpha.0, cand.1 + k * alpha.1);
                        let Some(&m) = mults.get(&up) else { break };
                        acc += m as i64 * i64::from(inner3(up, alpha));
                        k += 1;
                    }
                }
                let m = 2 * acc / i64::from(denom);
                if m > 0 {
                    mults.insert(cand, m as u64);
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    debug_assert_eq!(mults.values().sum::<u64>(), rep.dim());
    mults
}

/// The weight-subtraction oracle: builds the product weight multiset
/// and strips highest-weight irreps until nothing is left; returns the
/// number of terms extracted (with multiplicity).
pub fn su3_tensor_terms_by_weights(r1: Su3Irrep, r2: Su3Irrep) -> Result<usize> {
    let w1 = weight_system(r1);
    let w2 = weight_system(r2);
    let mut product: BTreeMap<Weight, i64> = BTreeMap::new();
    for (&u, &mu) in &w1 {
        for (&v, &mv) in &w2 {
            *product.entry((u.0 + v.0, u.1 + v.1)).or_insert(0) += (mu * mv) as i64;
        }
    }
    let mut terms = 0usize;
    let mut cache: BTreeMap<Su3Irrep, BTreeMap<Weight, u64>> = BTreeMap::new();
    while let Some((&w, &mult)) = product
        .iter()
        .filter(|(_, &m)| m != 0)
        .max_by_key(|(&(p, q), _)| (p + q, p))
    {
        if w.0 < 0 || w.1 < 0 || mult < 0 {
            return Err(Error::InvalidData(
                "weight subtraction produced a non-dominant leader".into(),
            ));
        }
        let rep = Su3Irrep::new(w.0 as u32, w.1 as u32);
        let system = cache.entry(rep).or_insert_with(|| weight_system(rep));
        for (&u, &m) in system.iter() {
            let slot = product.entry(u).or_insert(0);
            *slot -= mult * m as i64;
            if *slot == 0 {
                product.remove(&u);
            }
        }
        terms += mult as usize;
    }
    Ok(terms)
}
