//! Reference-direction niching: the survival-selection stage that keeps
//! whole non-domination fronts and resolves the splitting front by
//! niche counts.
//!
//! All tie-breaks are deterministic and part of the contract: the
//! least-crowded reference with the lowest index wins, an empty niche
//! takes its perpendicular-nearest member, an occupied niche takes the
//! member with the lowest pool index.

use super::individual::Individual;
use super::reference::ReferenceSet;
use super::sorting::assign_ranks;
use super::EvolveError;

/// Perpendicular distance from `point` to the ray through `reference`.
pub fn perpendicular_distance(point: &[f64], reference: &[f64]) -> f64 {
    let dot: f64 = point.iter().zip(reference).map(|(p, r)| p * r).sum();
    let norm_sq: f64 = reference.iter().map(|r| r * r).sum();
    let scale = dot / norm_sq;
    point
        .iter()
        .zip(reference)
        .map(|(p, r)| {
            let residual = p - scale * r;
            residual * residual
        })
        .sum::<f64>()
        .sqrt()
}

/// Associates each normalized objective vector with its nearest
/// reference direction; returns `(reference index, distance)` pairs.
/// Distance ties resolve to the lower reference index.
pub fn associate(normalized: &[Vec<f64>], refs: &ReferenceSet) -> Vec<(usize, f64)> {
    normalized
        .iter()
        .map(|row| {
            let mut best = (0usize, f64::INFINITY);
            for (index, reference) in refs.points().iter().enumerate() {
                let distance = perpendicular_distance(row, reference);
                if distance < best.1 {
                    best = (index, distance);
                }
            }
            best
        })
        .collect()
}

/// Selects `target` survivors from `pool`: whole fronts first, then the
/// splitting front thinned by niche-preserving selection against the
/// reference directions.
pub fn niche_select(
    mut pool: Vec<Individual>,
    refs: &mut ReferenceSet,
    target: usize,
) -> Result<Vec<Individual>, EvolveError> {
    if pool.len() < target {
        return Err(EvolveError::PoolTooSmall {
            pool: pool.len(),
            target,
        });
    }
    if pool.len() == target {
        return Ok(pool);
    }

    let fronts = assign_ranks(&mut pool);
    let mut chosen: Vec<usize> = Vec::with_capacity(target);
    let mut splitting: Option<&Vec<usize>> = None;
    for front in &fronts {
        if chosen.len() + front.len() <= target {
            chosen.extend_from_slice(front);
            if chosen.len() == target {
                break;
            }
        } else {
            splitting = Some(front);
            break;
        }
    }

    if let Some(candidates) = splitting {
        // Normalize the union of everything already chosen and the
        // splitting front, in that order.
        let considered: Vec<usize> = chosen.iter().chain(candidates).copied().collect();
        let objectives: Vec<Vec<f64>> = considered
            .iter()
            .map(|&i| pool[i].objectives.clone())
            .collect();
        let normalized = refs.normalize(&objectives);
        let assoc = associate(&normalized, refs);

        let mut niche_count = vec![0usize; refs.len()];
        for position in 0..chosen.len() {
            niche_count[assoc[position].0] += 1;
        }

        // Unconsumed splitting-front members grouped per reference.
        let mut open: Vec<Vec<usize>> = vec![Vec::new(); refs.len()];
        for offset in 0..candidates.len() {
            let position = chosen.len() + offset;
            open[assoc[position].0].push(position);
        }
        let position_of = considered;

        while chosen.len() < target {
            let reference = (0..refs.len())
                .filter(|&r| !open[r].is_empty())
                .min_by_key(|&r| niche_count[r])
                .expect("splitting front exhausted before the population filled");
            let slot = if niche_count[reference] == 0 {
                // Empty niche: take the member closest to the direction.
                let list = &open[reference];
                let mut best = 0usize;
                for k in 1..list.len() {
                    if assoc[list[k]].1 < assoc[list[best]].1 {
                        best = k;
                    }
                }
                best
            } else {
                // Occupied niche: lowest pool index keeps it deterministic.
                0
            };
            let position = open[reference].remove(slot);
            chosen.push(position_of[position]);
            niche_count[reference] += 1;
        }
    }

    let mut taken: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    Ok(chosen
        .into_iter()
        .map(|i| taken[i].take().expect("index selected twice"))
        .collect())
}
