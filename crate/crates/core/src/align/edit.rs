//! Edit distance table and traceback.

use crate::corpus::Sentence;

use super::cost::CostFunction;
use super::Link;

/// The `(|A|+1) × (|B|+1)` table of edit costs `D(i, j)`.
#[derive(Debug, Clone)]
pub struct EditMatrix {
    cols: usize,
    cells: Vec<f64>,
}

impl EditMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.cells[i * self.cols + j] = v;
    }

    /// The edit distance, `D(|A|, |B|)`.
    pub fn distance(&self) -> f64 {
        *self.cells.last().unwrap()
    }
}

/// Fill the table. `D(i, 0)` accumulates deletions, `D(0, j)` insertions,
/// each interior cell is the minimum over substitution, deletion, insertion.
pub fn edit_matrix(a: &Sentence, b: &Sentence, cost: &CostFunction) -> EditMatrix {
    let (la, lb) = (a.len(), b.len());
    let mut m = EditMatrix {
        cols: lb + 1,
        cells: vec![0.0; (la + 1) * (lb + 1)],
    };
    for i in 1..=la {
        let v = m.get(i - 1, 0) + cost.deletion();
        m.set(i, 0, v);
    }
    for j in 1..=lb {
        let v = m.get(0, j - 1) + cost.insertion();
        m.set(0, j, v);
    }
    for i in 1..=la {
        for j in 1..=lb {
            let sub = m.get(i - 1, j - 1) + cost.diagonal(a, b, i - 1, j - 1);
            let del = m.get(i - 1, j) + cost.deletion();
            let ins = m.get(i, j - 1) + cost.insertion();
            m.set(i, j, sub.min(del).min(ins));
        }
    }
    m
}

/// Walk one minimum-cost transcript back from `D(|A|, |B|)` and collect the
/// links, i.e. the matched word pairs. Substituted words never link. The
/// branch order deletion → insertion → diagonal is fixed, which makes the
/// result deterministic (and, for crossing candidates, dependent on the
/// argument order).
pub fn traceback_links(
    a: &Sentence,
    b: &Sentence,
    m: &EditMatrix,
    cost: &CostFunction,
) -> Vec<Link> {
    let mut links = Vec::new();
    let mut i = a.len();
    let mut j = b.len();
    while i != 0 && j != 0 {
        // Costs recomputed with the exact expressions used to fill the
        // table, so float equality is reliable.
        if m.get(i, j) == m.get(i - 1, j) + cost.deletion() {
            i -= 1;
        } else if m.get(i, j) == m.get(i, j - 1) + cost.insertion() {
            j -= 1;
        } else {
            if a.tokens()[i - 1] == b.tokens()[j - 1] {
                links.push(Link { a: i - 1, b: j - 1 });
            }
            i -= 1;
            j -= 1;
        }
    }
    links.reverse();
    links
}
