use crate::refgeom::{perpendicular_distance_unchecked, ReferenceSet};

/// Assigns each normalized objective vector to a reference line.
///
/// Every line first receives `⌊S / N'⌋` fishes: all (fish, line) pairs are
/// sorted by perpendicular distance and taken greedily while the fish is free
/// and the line is below that floor. Fishes left over go to their closest
/// line. Ties break on lower line id, then lower fish index.
pub fn assign_clusters(weights: &[Vec<f64>], reference: &ReferenceSet) -> Vec<usize> {
    let lines = reference.len();
    let school = weights.len();
    let mut assignment = vec![usize::MAX; school];
    if lines == 0 {
        return assignment;
    }
    let norms: Vec<f64> = reference.lines.iter().map(|l| l.norm()).collect();
    let distances: Vec<f64> = weights
        .iter()
        .flat_map(|w| {
            reference
                .lines
                .iter()
                .zip(&norms)
                .map(move |(line, &norm)| perpendicular_distance_unchecked(w, &line.direction, norm))
        })
        .collect();

    let floor = school / lines;
    if floor > 0 {
        let mut pairs: Vec<(usize, usize)> =
            (0..school).flat_map(|fish| (0..lines).map(move |line| (fish, line))).collect();
        pairs.sort_by(|a, b| {
            distances[a.0 * lines + a.1]
                .total_cmp(&distances[b.0 * lines + b.1])
                .then(a.1.cmp(&b.1))
                .then(a.0.cmp(&b.0))
        });
        let mut counts = vec![0usize; lines];
        let mut placed = 0;
        let needed = floor * lines;
        for (fish, line) in pairs {
            if assignment[fish] == usize::MAX && counts[line] < floor {
                assignment[fish] = line;
                counts[line] += 1;
                placed += 1;
                if placed == needed {
                    break;
                }
            }
        }
    }

    for (fish, slot) in assignment.iter_mut().enumerate() {
        if *slot == usize::MAX {
            let row = &distances[fish * lines..(fish + 1) * lines];
            *slot = (0..lines)
                .min_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)))
                .expect("at least one line");
        }
    }
    assignment
}
