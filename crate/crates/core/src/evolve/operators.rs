//! Variation operators: simulated binary crossover, bounded polynomial
//! mutation, and the mating tournament.

use super::individual::Individual;
use rand::Rng;

/// Genes closer than this are treated as equal and copied through.
const GENE_EPSILON: f64 = 1e-14;

/// Simulated binary crossover with symmetric boundary handling.
///
/// The spread factor is capped by the distance to the nearer bound, so
/// both children land inside the box without clamping and their
/// per-gene midpoint equals the parents' midpoint.
pub fn sbx_crossover(
    a: &[f64],
    b: &[f64],
    bounds: &[(f64, f64)],
    eta: f64,
    rng: &mut impl Rng,
) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(a.len(), b.len());
    debug_assert_eq!(a.len(), bounds.len());
    let mut child1 = a.to_vec();
    let mut child2 = b.to_vec();
    for i in 0..a.len() {
        if rng.random::<f64>() >= 0.5 {
            continue;
        }
        let (lower, upper) = bounds[i];
        let (y1, y2) = if a[i] <= b[i] { (a[i], b[i]) } else { (b[i], a[i]) };
        if y2 - y1 < GENE_EPSILON {
            continue;
        }
        let spread_cap = 1.0 + 2.0 * (y1 - lower).min(upper - y2) / (y2 - y1);
        let alpha = 2.0 - spread_cap.powf(-(eta + 1.0));
        let u: f64 = rng.random();
        let spread = if u <= 1.0 / alpha {
            (u * alpha).powf(1.0 / (eta + 1.0))
        } else {
            (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
        };
        let mid = 0.5 * (y1 + y2);
        let delta = 0.5 * spread * (y2 - y1);
        let (mut lo, mut hi) = (mid - delta, mid + delta);
        if rng.random::<f64>() < 0.5 {
            std::mem::swap(&mut lo, &mut hi);
        }
        child1[i] = lo;
        child2[i] = hi;
    }
    (child1, child2)
}

/// Bounded polynomial mutation; each gene mutates independently with
/// probability `pm`.
pub fn polynomial_mutation(
    genes: &mut [f64],
    bounds: &[(f64, f64)],
    eta: f64,
    pm: f64,
    rng: &mut impl Rng,
) {
    debug_assert_eq!(genes.len(), bounds.len());
    for (gene, &(lower, upper)) in genes.iter_mut().zip(bounds) {
        if rng.random::<f64>() >= pm {
            continue;
        }
        let range = upper - lower;
        if range <= 0.0 {
            continue;
        }
        let u: f64 = rng.random();
        let exponent = 1.0 / (eta + 1.0);
        let delta = if u < 0.5 {
            let slack = 1.0 - (*gene - lower) / range;
            let value = 2.0 * u + (1.0 - 2.0 * u) * slack.powf(eta + 1.0);
            value.powf(exponent) - 1.0
        } else {
            let slack = 1.0 - (upper - *gene) / range;
            let value = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * slack.powf(eta + 1.0);
            1.0 - value.powf(exponent)
        };
        *gene = (*gene + delta * range).clamp(lower, upper);
    }
}

/// Binary tournament on (rank, plane distance): lower rank wins, ties
/// go to the member nearer the simplex plane, full ties to the first
/// draw.
pub fn binary_tournament(members: &[Individual], rng: &mut impl Rng) -> usize {
    let first = rng.random_range(0..members.len());
    let second = rng.random_range(0..members.len());
    let a = &members[first];
    let b = &members[second];
    if (b.rank, b.plane_distance) < (a.rank, a.plane_distance) {
        second
    } else {
        first
    }
}
