use indexmap::IndexSet;

use super::matrix::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::exec::Execution;

pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite matrix group, fully enumerated.
///
/// Element 0 is always the identity. Elements are stored in the order the
/// breadth-first search discovered them, which depends only on the
/// generator list.
#[derive(Debug, Clone)]
pub struct GroupClosure<S> {
    elements: IndexSet<Matrix<S>>,
    generators: Vec<usize>,
}

impl<S: Scalar> GroupClosure<S> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Matrix<S>> {
        self.elements.iter()
    }

    pub fn element(&self, i: usize) -> &Matrix<S> {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix<S>) -> Option<usize> {
        self.elements.get_index_of(m)
    }

    pub fn contains(&self, m: &Matrix<S>) -> bool {
        self.elements.contains(m)
    }

    /// Indices of the generators within [`elements`](Self::elements).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> Vec<Matrix<S>> {
        self.generators.iter().map(|&i| self.elements[i].clone()).collect()
    }

    pub fn to_vec(&self) -> Vec<Matrix<S>> {
        self.elements.iter().cloned().collect()
    }

    /// Order of the element at index `i`: least `k` with `g^k = 1`.
    pub fn element_order(&self, i: usize) -> u64 {
        let g = &self.elements[i];
        let mut x = g.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(g);
            k += 1;
        }
        k
    }

    /// Orders of all elements, index-aligned with the element list.
    pub fn element_orders(&self, exec: Execution) -> Vec<u64> {
        let idx: Vec<usize> = (0..self.order()).collect();
        exec.map(&idx, |&i| self.element_order(i))
    }

    /// `{left · g · right}` for every element, index-aligned. `left` and
    /// `right` must be mutually inverse.
    pub fn conjugated(&self, left: &Matrix<S>, right: &Matrix<S>) -> Result<Self> {
        if !left.mul(right).is_identity() {
            return Err(Error::invalid("conjugating matrices are not inverse to each other"));
        }
        let elements: IndexSet<Matrix<S>> = self.elements.iter().map(|g| left.mul(g).mul(right)).collect();
        if elements.len() != self.elements.len() {
            return Err(Error::Internal("conjugation is not injective".into()));
        }
        Ok(Self { elements, generators: self.generators.clone() })
    }
}

/// Closure with the default execution strategy.
pub fn closure<S: Scalar>(generators: &[Matrix<S>], cap: usize) -> Result<GroupClosure<S>> {
    closure_with(generators, cap, Execution::default())
}

/// Enumerates the group generated by `generators`.
///
/// Works layer by layer: every element found in the previous layer is
/// multiplied on the right by every generator. Products are computed (and
/// screened against the elements known at the start of the layer) in
/// parallel; new elements are then inserted sequentially in frontier ×
/// generator order, so the element ordering is the same for every
/// execution strategy.
pub fn closure_with<S: Scalar>(
    generators: &[Matrix<S>],
    cap: usize,
    exec: Execution,
) -> Result<GroupClosure<S>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::invalid("at least one generator is required"))?;
    if cap == 0 {
        return Err(Error::invalid("closure cap must be at least 1"));
    }
    let dim = first.dim();
    for (i, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(Error::invalid(format!(
                "generator {} has dimension {}, expected {dim}",
                i + 1,
                g.dim()
            )));
        }
        if Scalar::is_zero(&g.determinant()) {
            return Err(Error::invalid(format!("generator {} is singular", i + 1)));
        }
    }

    let mut elements = IndexSet::new();
    elements.insert(Matrix::identity(dim, first.get(0, 0)));
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let known = &elements;
        let products: Vec<Vec<Matrix<S>>> = exec.map(&frontier, |&i| {
            let x = &known[i];
            generators
                .iter()
                .map(|g| x.mul(g))
                .filter(|p| !known.contains(p))
                .collect()
        });
        let mut next = Vec::new();
        for p in products.into_iter().flatten() {
            let (idx, fresh) = elements.insert_full(p);
            if fresh {
                if elements.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                next.push(idx);
            }
        }
        frontier = next;
    }

    let generators = generators
        .iter()
        .map(|g| elements.get_index_of(g).expect("generator lies in its closure"))
        .collect();
    Ok(GroupClosure { elements, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::matrix::RatMatrix;

    fn rot() -> RatMatrix {
        RatMatrix::from_int_rows(&[vec![0, -1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn rotation_generates_cyclic_four() {
        let g = closure(&[rot()], 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.element(0).is_identity());
        assert_eq!(g.generators(), &[1]);
    }

    #[test]
    fn identity_generates_trivial_group() {
        let id = RatMatrix::from_int_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(closure(&[id], 10).unwrap().order(), 1);
    }

    #[test]
    fn infinite_group_hits_cap() {
        let shear = RatMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(closure(&[shear], 50).unwrap_err(), Error::CapExceeded { cap: 50 });
        assert_eq!(closure(&[rot()], 3).unwrap_err(), Error::CapExceeded { cap: 3 });
    }

    #[test]
    fn bad_generators_rejected() {
        let sing = RatMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(closure(&[sing], 10), Err(Error::InvalidInput(_))));
        let one = RatMatrix::from_int_rows(&[vec![1]]).unwrap();
        assert!(matches!(closure(&[rot(), one], 10), Err(Error::InvalidInput(_))));
        assert!(matches!(closure::<num_rational::BigRational>(&[], 10), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn execution_modes_agree_on_ordering() {
        let swap = RatMatrix::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let cyc = RatMatrix::from_int_rows(&[vec![0, 0, -1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let a = closure_with(&[swap.clone(), cyc.clone()], 1000, Execution::Sequential).unwrap();
        let b = closure_with(&[swap, cyc], 1000, Execution::Parallel).unwrap();
        assert_eq!(a.to_vec(), b.to_vec());
        assert_eq!(a.order(), 48);
    }

    #[test]
    fn lagrange_holds() {
        let swap = RatMatrix::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let cyc = RatMatrix::from_int_rows(&[vec![0, 0, -1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let g = closure(&[swap, cyc], 1000).unwrap();
        let order = g.order() as u64;
        for (i, x) in g.elements().enumerate() {
            assert!(x.pow(order).is_identity());
            assert_eq!(order % g.element_order(i), 0);
        }
        let orders = g.element_orders(Execution::Sequential);
        assert_eq!(orders, g.element_orders(Execution::Parallel));
        assert_eq!(orders[0], 1);
    }

    #[test]
    fn generator_order_does_not_change_the_set() {
        let swap = RatMatrix::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let cyc = RatMatrix::from_int_rows(&[vec![0, 0, -1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let a = closure(&[swap.clone(), cyc.clone()], 1000).unwrap();
        let b = closure(&[cyc, swap], 1000).unwrap();
        assert_eq!(a.order(), b.order());
        assert!(a.elements().all(|x| b.contains(x)));
        assert_eq!(a.generators(), &[1, 2]);
    }
}
