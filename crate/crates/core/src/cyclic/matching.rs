//! Maximum bipartite matching on a dense boolean support pattern.
//!
//! The structural rank of a square zero pattern is the size of a maximum
//! matching between rows and columns along allowed entries. Patterns here are
//! at most a few dozen rows, so the simple augmenting-path method is plenty.

/// Size of a maximum matching in the bipartite graph whose edges are the
/// `true` entries of `support` (rows on one side, columns on the other).
pub fn maximum_matching(support: &[Vec<bool>]) -> usize {
    let rows = support.len();
    let cols = support.iter().map(Vec::len).max().unwrap_or(0);
    let mut col_owner: Vec<Option<usize>> = vec![None; cols];
    let mut size = 0;
    for row in 0..rows {
        let mut seen = vec![false; cols];
        if augment(row, support, &mut seen, &mut col_owner) {
            size += 1;
        }
    }
    size
}

fn augment(
    row: usize,
    support: &[Vec<bool>],
    seen: &mut [bool],
    col_owner: &mut [Option<usize>],
) -> bool {
    for (col, &allowed) in support[row].iter().enumerate() {
        if !allowed || seen[col] {
            continue;
        }
        seen[col] = true;
        let free = match col_owner[col] {
            None => true,
            Some(other) => augment(other, support, seen, col_owner),
        };
        if free {
            col_owner[col] = Some(row);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(rows: &[&str]) -> Vec<Vec<bool>> {
        rows.iter()
            .map(|r| r.chars().map(|c| c == '1').collect())
            .collect()
    }

    #[test]
    fn identity_pattern_is_full_rank() {
        assert_eq!(maximum_matching(&pattern(&["100", "010", "001"])), 3);
    }

    #[test]
    fn needs_augmenting_path() {
        // Greedy row-by-row would match row 0 to column 0 and get stuck.
        assert_eq!(maximum_matching(&pattern(&["11", "10"])), 2);
    }

    #[test]
    fn single_column_pattern() {
        assert_eq!(maximum_matching(&pattern(&["100", "100", "100"])), 1);
        assert_eq!(maximum_matching(&[]), 0);
    }
}
