//! Constrained non-domination sorting.

use super::individual::Individual;

/// Componentwise Pareto domination for minimization: `a` is nowhere
/// worse and somewhere strictly better.
pub fn dominates_objectives(a: &[f64], b: &[f64]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Constrained domination: any feasible member beats any infeasible
/// one, infeasible members compare by violation, and feasible members
/// compare by plain Pareto domination.
pub fn dominates(a: &Individual, b: &Individual) -> bool {
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation < b.violation,
        (true, true) => dominates_objectives(&a.objectives, &b.objectives),
    }
}

/// Fast non-dominated sort: returns fronts of member indices, front 0
/// first. Every member lands in exactly one front.
pub fn fast_nondominated_sort(members: &[Individual]) -> Vec<Vec<usize>> {
    let n = members.len();
    if n == 0 {
        return Vec::new();
    }
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for p in 0..n {
        for q in p + 1..n {
            if dominates(&members[p], &members[q]) {
                dominated_by[p].push(q);
                domination_count[q] += 1;
            } else if dominates(&members[q], &members[p]) {
                dominated_by[q].push(p);
                domination_count[p] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::take(&mut current));
        current = next;
    }
    fronts
}

/// Sorts and writes each member's front index into its `rank` field.
pub fn assign_ranks(members: &mut [Individual]) -> Vec<Vec<usize>> {
    let fronts = fast_nondominated_sort(members);
    for (rank, front) in fronts.iter().enumerate() {
        for &index in front {
            members[index].rank = rank;
        }
    }
    fronts
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn feasible(objectives: Vec<f64>) -> Individual {
        Individual {
            genes: Vec::new(),
            objectives,
            violation: 0.0,
            rank: 0,
            plane_distance: 0.0,
        }
    }

    fn infeasible(objectives: Vec<f64>, violation: f64) -> Individual {
        Individual {
            violation,
            ..feasible(objectives)
        }
    }

    /// O(n^2) oracle: a member's front index is the length of the
    /// longest domination chain above it.
    fn brute_force_fronts(members: &[Individual]) -> Vec<Vec<usize>> {
        let n = members.len();
        let mut assigned = vec![usize::MAX; n];
        let mut remaining = n;
        let mut level = 0;
        while remaining > 0 {
            let mut this_level = Vec::new();
            for i in 0..n {
                if assigned[i] != usize::MAX {
                    continue;
                }
                let dominated = (0..n).any(|j| {
                    assigned[j] == usize::MAX && j != i && dominates(&members[j], &members[i])
                });
                if !dominated {
                    this_level.push(i);
                }
            }
            for &i in &this_level {
                assigned[i] = level;
            }
            remaining -= this_level.len();
            level += 1;
            if this_level.is_empty() {
                panic!("domination relation is not a strict partial order");
            }
        }
        let mut fronts = vec![Vec::new(); level];
        for (i, &rank) in assigned.iter().enumerate() {
            fronts[rank].push(i);
        }
        fronts
    }

    #[test]
    fn simple_two_front_case() {
        let members = vec![
            feasible(vec![1.0, 2.0]),
            feasible(vec![2.0, 1.0]),
            feasible(vec![3.0, 3.0]),
        ];
        assert_eq!(fast_nondominated_sort(&members), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn singleton_population() {
        let members = vec![feasible(vec![1.0, 1.0, 1.0])];
        assert_eq!(fast_nondominated_sort(&members), vec![vec![0]]);
    }

    #[test]
    fn empty_population() {
        assert!(fast_nondominated_sort(&[]).is_empty());
    }

    #[test]
    fn feasible_always_beats_infeasible() {
        let a = feasible(vec![100.0, 100.0]);
        let b = infeasible(vec![0.0, 0.0], 0.1);
        assert!(dominates(&a, &b));
        assert!(!dominates(&b, &a));
    }

    #[test]
    fn infeasible_ordered_by_violation() {
        let a = infeasible(vec![5.0, 5.0], 0.1);
        let b = infeasible(vec![0.0, 0.0], 0.2);
        assert!(dominates(&a, &b));
        assert!(!dominates(&b, &a));
    }

    #[test]
    fn equal_vectors_do_not_dominate() {
        let a = feasible(vec![1.0, 2.0]);
        let b = feasible(vec![1.0, 2.0]);
        assert!(!dominates(&a, &b));
        assert!(!dominates(&b, &a));
    }

    #[test]
    fn matches_brute_force_on_random_populations() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.random_range(1..=48);
            let m = rng.random_range(2..=5);
            let members: Vec<Individual> = (0..n)
                .map(|_| {
                    let objectives = (0..m).map(|_| rng.random_range(0.0..4.0)).collect();
                    // A quarter of the members are infeasible to exercise
                    // the constrained branch.
                    if rng.random::<f64>() < 0.25 {
                        infeasible(objectives, rng.random_range(0.01..1.0))
                    } else {
                        feasible(objectives)
                    }
                })
                .collect();
            assert_eq!(
                fast_nondominated_sort(&members),
                brute_force_fronts(&members)
            );
        }
    }

    #[test]
    fn ranks_are_written_back() {
        let mut members = vec![
            feasible(vec![1.0, 2.0]),
            feasible(vec![2.0, 1.0]),
            feasible(vec![3.0, 3.0]),
            feasible(vec![4.0, 4.0]),
        ];
        assign_ranks(&mut members);
        assert_eq!(
            members.iter().map(|m| m.rank).collect::<Vec<_>>(),
            vec![0, 0, 1, 2]
        );
    }
}
