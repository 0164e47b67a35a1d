use num_rational::BigRational;

use super::{GraphError, GraphOfGroups};

/// The weighted non-backtracking transfer matrix
/// `B_c[e, e'] = e^{c(e')}·[t(e) = o(e'), e' ≠ ē]`, stored by rows.
#[derive(Debug, Clone)]
pub struct NbTransfer {
    /// Row `e`: successors `(e', weight)` in ascending `e'`.
    pub rows: Vec<Vec<(usize, f64)>>,
    /// Set when the graph has nontrivial groups, whose orders are ignored.
    pub orders_ignored: bool,
}

impl NbTransfer {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                m[(i, j)] = w;
            }
        }
        m
    }
}

fn successors(g: &GraphOfGroups, e: usize) -> impl Iterator<Item = usize> + '_ {
    let back = g.reverse(e);
    g.out_edges(g.terminus(e)).iter().copied().filter(move |&f| f != back)
}

pub fn nb_transfer(g: &GraphOfGroups) -> Result<NbTransfer, GraphError> {
    g.check_nondegenerate()?;
    let rows = (0..g.num_edges())
        .map(|e| successors(g, e).map(|f| (f, g.conductance(f).exp())).collect())
        .collect();
    Ok(NbTransfer { rows, orders_ignored: !g.trivial_groups() })
}

/// Exact variant with user-supplied rational weights `w(e')` in place of
/// `e^{c(e')}`.
pub fn nb_transfer_exact(g: &GraphOfGroups, w: &[BigRational]) -> Result<Vec<Vec<(usize, BigRational)>>, GraphError> {
    g.check_nondegenerate()?;
    assert_eq!(w.len(), g.num_edges());
    Ok((0..g.num_edges()).map(|e| successors(g, e).map(|f| (f, w[f].clone())).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn figure_eight_rows() {
        let b = nb_transfer(&fixtures::figure8()).unwrap();
        assert_eq!(b.dim(), 4);
        for row in &b.rows {
            assert_eq!(row.len(), 3);
            assert!(row.iter().all(|&(_, w)| w == 1.0));
        }
        let m = b.to_dense();
        assert_eq!((&m * &m).trace(), 12.0);
    }

    #[test]
    fn regular_row_sums() {
        let b = nb_transfer(&fixtures::petersen()).unwrap();
        assert!(b.rows.iter().all(|r| r.len() == 2));
        assert!(!b.orders_ignored);
        assert!(nb_transfer(&fixtures::order2()).unwrap().orders_ignored);
    }

    #[test]
    fn degenerate_rejected() {
        let s = r#"{"vertices":[{"id":"A","order":1},{"id":"B","order":1}],
            "edges":[{"id":"a","from":"A","to":"B","reverse":"b","order":1,"conductance":0},
                     {"id":"b","from":"B","to":"A","reverse":"a","order":1,"conductance":0}]}"#;
        let g = GraphOfGroups::from_json_str(s).unwrap();
        assert!(matches!(nb_transfer(&g), Err(GraphError::Degenerate(_))));
    }
}
