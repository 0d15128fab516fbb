//! Balanced linear assignment: an O(n^3) Hungarian solver with deterministic
//! tie-breaking, plus an exhaustive oracle for small instances.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AssignmentError {
    #[error("cost matrix must be square, got {rows} rows and {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("cost at ({row}, {col}) must be finite and nonnegative, got {value}")]
    BadCost { row: usize, col: usize, value: f64 },
    #[error("cost matrix must be non-empty")]
    Empty,
    #[error("exhaustive search limited to n <= {max}, got {n}")]
    TooLargeForBruteForce { n: usize, max: usize },
}

/// Square matrix of nonnegative costs.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, AssignmentError> {
        let n = rows.len();
        if n == 0 {
            return Err(AssignmentError::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AssignmentError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(AssignmentError::BadCost { row: r, col: c, value });
                }
                data.push(value);
            }
        }
        Ok(Self { n, data })
    }

    /// Builds an n x n matrix by evaluating `cost` at every cell.
    pub fn from_fn(n: usize, mut cost: impl FnMut(usize, usize) -> f64) -> Result<Self, AssignmentError> {
        if n == 0 {
            return Err(AssignmentError::Empty);
        }
        let rows = (0..n).map(|r| (0..n).map(|c| cost(r, c)).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }
}

/// A perfect matching of rows to columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    /// row_to_col[r] is the column matched to row r.
    pub row_to_col: Vec<usize>,
    pub total_cost: f64,
}

impl Matching {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_to_col.iter().copied().enumerate()
    }
}

/// Minimum-cost perfect matching via shortest augmenting paths on reduced
/// costs. Rows are inserted in index order and column scans run in index
/// order with strict comparisons, so among equal-cost optima the matching is
/// deterministic: lowest row first, lowest column among ties.
pub fn hungarian(costs: &CostMatrix) -> Matching {
    let n = costs.size();
    let sentinel = n; // virtual free column used to seed each augmentation
    let mut row_pot = vec![0.0_f64; n];
    let mut col_pot = vec![0.0_f64; n + 1];
    let mut owner: Vec<Option<usize>> = vec![None; n + 1]; // column -> matched row

    for row in 0..n {
        owner[sentinel] = Some(row);
        let mut cur = sentinel;
        let mut min_reduced = vec![f64::INFINITY; n];
        let mut prev = vec![sentinel; n];
        let mut visited = vec![false; n + 1];

        // grow the alternating tree until a free column is reached
        loop {
            visited[cur] = true;
            let tree_row = owner[cur].expect("tree column always owned");
            let mut delta = f64::INFINITY;
            let mut next = sentinel;
            for col in 0..n {
                if visited[col] {
                    continue;
                }
                let reduced = costs.get(tree_row, col) - row_pot[tree_row] - col_pot[col];
                if reduced < min_reduced[col] {
                    min_reduced[col] = reduced;
                    prev[col] = cur;
                }
                if min_reduced[col] < delta {
                    delta = min_reduced[col];
                    next = col;
                }
            }
            debug_assert!(next != sentinel, "bipartite graph is complete");
            for (col, &in_tree) in visited.iter().enumerate() {
                if in_tree {
                    row_pot[owner[col].expect("visited columns are owned")] += delta;
                    col_pot[col] -= delta;
                } else if col < n {
                    min_reduced[col] -= delta;
                }
            }
            cur = next;
            if owner[cur].is_none() {
                break;
            }
        }

        // augment along the recorded path
        while cur != sentinel {
            let back = prev[cur];
            owner[cur] = owner[back];
            cur = back;
        }
    }

    let mut row_to_col = vec![0; n];
    let mut total_cost = 0.0;
    for (col, owner_row) in owner.iter().take(n).enumerate() {
        let row = owner_row.expect("perfect matching");
        row_to_col[row] = col;
        total_cost += costs.get(row, col);
    }
    Matching {
        row_to_col,
        total_cost,
    }
}

const BRUTE_FORCE_MAX: usize = 8;

/// Exhaustive minimum over all n! permutations; the test oracle for
/// [`hungarian`]. Rejects n > 8.
pub fn brute_force_assignment(costs: &CostMatrix) -> Result<Matching, AssignmentError> {
    let n = costs.size();
    if n > BRUTE_FORCE_MAX {
        return Err(AssignmentError::TooLargeForBruteForce {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let mut best: Option<Matching> = None;
    let mut current = vec![0usize; n];
    let mut used = vec![false; n];
    search(costs, 0, 0.0, &mut current, &mut used, &mut best);
    Ok(best.expect("n >= 1"))
}

fn search(
    costs: &CostMatrix,
    row: usize,
    cost_so_far: f64,
    current: &mut [usize],
    used: &mut [bool],
    best: &mut Option<Matching>,
) {
    let n = costs.size();
    if let Some(b) = best {
        if cost_so_far >= b.total_cost {
            return; // cannot improve: costs are nonnegative
        }
    }
    if row == n {
        *best = Some(Matching {
            row_to_col: current.to_vec(),
            total_cost: cost_so_far,
        });
        return;
    }
    for col in 0..n {
        if !used[col] {
            used[col] = true;
            current[row] = col;
            search(costs, row + 1, cost_so_far + costs.get(row, col), current, used, best);
            used[col] = false;
        }
    }
}
