use std::fmt;

use super::LocalizationError;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, LocalizationError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(LocalizationError::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((0..w).map(|c| self.0.iter().filter(|&&r| r > c).count()).collect())
    }

    /// Hook length of the box in row r, column c.
    pub fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.0[r] - c - 1;
        let leg = self.0.iter().skip(r + 1).filter(|&&l| l > c).count();
        arm + leg + 1
    }

    /// n! / Π hooks
    pub fn hook_length_count(&self) -> u128 {
        let n = self.size() as u128;
        let fact: u128 = (1..=n).product();
        let mut hooks: u128 = 1;
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                hooks *= self.hook(r, c) as u128;
            }
        }
        fact / hooks
    }

    /// All partitions of n, largest first part first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Box positions (row, column) indexed by label − 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    cells: Vec<(usize, usize)>,
}

impl StandardTableau {
    /// Build from the cell of each label; checks the growth condition.
    pub fn from_cells(cells: Vec<(usize, usize)>) -> Result<Self, LocalizationError> {
        let mut rows: Vec<usize> = Vec::new();
        for &(r, c) in &cells {
            let ok = if r == rows.len() { c == 0 && (r == 0 || rows[r - 1] >= 1) } else { r < rows.len() && rows[r] == c && (r == 0 || rows[r - 1] > c) };
            if !ok {
                return Err(LocalizationError::InvalidTableau);
            }
            if r == rows.len() {
                rows.push(1);
            } else {
                rows[r] += 1;
            }
        }
        Ok(StandardTableau { shape: Partition(rows), cells })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// (row, column) of label i (1-based).
    pub fn cell(&self, i: usize) -> (usize, usize) {
        self.cells[i - 1]
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    /// Co-arm a′ (column index) of label i.
    pub fn coarm(&self, i: usize) -> usize {
        self.cells[i - 1].1
    }

    /// Co-leg l′ (row index) of label i.
    pub fn coleg(&self, i: usize) -> usize {
        self.cells[i - 1].0
    }

    pub fn label_at(&self, r: usize, c: usize) -> Option<usize> {
        self.cells.iter().position(|&x| x == (r, c)).map(|k| k + 1)
    }

    pub fn is_valid(&self) -> bool {
        let ok_rows = self.shape.0.iter().enumerate().all(|(r, &len)| {
            (1..len).all(|c| self.label_at(r, c - 1) < self.label_at(r, c))
        });
        let ok_cols = self.cells.iter().all(|&(r, c)| r == 0 || self.label_at(r - 1, c).is_some_and(|l| Some(l) < self.label_at(r, c)));
        ok_rows && ok_cols && self.cells.first().is_none_or(|&x| x == (0, 0))
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .shape
            .0
            .iter()
            .enumerate()
            .map(|(r, &len)| {
                let ls: Vec<String> = (0..len).map(|c| self.label_at(r, c).unwrap().to_string()).collect();
                ls.join(" ")
            })
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Every standard tableau of the given shape, in the order obtained by
/// placing labels 1, 2, … into the lowest admissible row first.
pub fn syt_enumerate(shape: &Partition) -> Vec<StandardTableau> {
    fn go(shape: &[usize], rows: &mut Vec<usize>, cells: &mut Vec<(usize, usize)>, out: &mut Vec<StandardTableau>, n: usize) {
        if cells.len() == n {
            out.push(StandardTableau { shape: Partition(shape.to_vec()), cells: cells.clone() });
            return;
        }
        for r in 0..shape.len() {
            let c = rows[r];
            if c < shape[r] && (r == 0 || rows[r - 1] > c) {
                rows[r] += 1;
                cells.push((r, c));
                go(shape, rows, cells, out, n);
                cells.pop();
                rows[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![0; shape.rows()];
    go(&shape.0, &mut rows, &mut Vec::new(), &mut out, shape.size());
    out
}

/// All standard tableaux with n boxes, shapes in `Partition::all` order.
pub fn syt_all(n: usize) -> Vec<StandardTableau> {
    Partition::all(n).iter().flat_map(syt_enumerate).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(syt_enumerate(&p).len(), 2);
        assert_eq!(syt_enumerate(&Partition::new(vec![4]).unwrap()).len(), 1);
        assert_eq!(syt_all(4).len(), 10);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn hook_formula_up_to_eight() {
        for n in 1..=8 {
            for p in Partition::all(n) {
                let ts = syt_enumerate(&p);
                assert_eq!(ts.len() as u128, p.hook_length_count(), "{p}");
                assert!(ts.iter().all(|t| t.is_valid() && t.cell(1) == (0, 0)));
            }
        }
    }

    #[test]
    fn conjugate_is_involution() {
        for p in Partition::all(7) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.conjugate().hook_length_count(), p.hook_length_count());
        }
    }

    #[test]
    fn from_cells_checks_growth() {
        assert!(StandardTableau::from_cells(vec![(0, 0), (1, 0), (0, 1)]).is_ok());
        assert!(StandardTableau::from_cells(vec![(0, 0), (1, 1)]).is_err());
        assert!(StandardTableau::from_cells(vec![(0, 0), (1, 0), (2, 0), (1, 1)]).is_err());
    }
}
