//! Transportation simplex over exact rationals.
//!
//! Balanced problem: supplies `a_i`, demands `b_j`, costs `c_ij`. The initial
//! basis comes from the north-west corner rule and always holds `m + n - 1`
//! cells forming a spanning tree of the bipartite row/column graph, zero
//! allocations included. Entering and leaving cells are chosen by smallest
//! index, which rules out cycling on degenerate pivots.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone)]
pub(crate) struct Plan {
    /// Positive flows `(row, col, amount)` in row-major order.
    pub flow: Vec<(usize, usize, Rational)>,
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub cost: Rational,
}

#[derive(Clone, Copy)]
enum Node {
    Row(usize),
    Col(usize),
}

struct Tableau<'a> {
    m: usize,
    n: usize,
    cost: &'a [Vec<Rational>],
    basic: Vec<Vec<Option<Rational>>>,
}

pub(crate) fn solve(supply: &[Rational], demand: &[Rational], cost: &[Vec<Rational>]) -> Plan {
    let (m, n) = (supply.len(), demand.len());
    assert!(m > 0 && n > 0, "transport problem needs nonempty marginals");
    debug_assert_eq!(
        supply.iter().sum::<Rational>(),
        demand.iter().sum::<Rational>()
    );
    let mut t = Tableau {
        m,
        n,
        cost,
        basic: vec![vec![None; n]; m],
    };
    t.north_west(supply, demand);
    loop {
        let (u, v) = t.potentials();
        match t.entering(&u, &v) {
            None => return t.finish(u, v),
            Some((i, j)) => t.pivot(i, j),
        }
    }
}

impl Tableau<'_> {
    fn north_west(&mut self, supply: &[Rational], demand: &[Rational]) {
        let mut s = supply.to_vec();
        let mut d = demand.to_vec();
        let (mut i, mut j) = (0, 0);
        loop {
            let x = if s[i] < d[j] { s[i].clone() } else { d[j].clone() };
            s[i] -= &x;
            d[j] -= &x;
            self.basic[i][j] = Some(x);
            if i == self.m - 1 && j == self.n - 1 {
                break;
            }
            if (s[i].is_zero() && i < self.m - 1) || j == self.n - 1 {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut rows = vec![Vec::new(); self.m];
        let mut cols = vec![Vec::new(); self.n];
        for i in 0..self.m {
            for j in 0..self.n {
                if self.basic[i][j].is_some() {
                    rows[i].push(j);
                    cols[j].push(i);
                }
            }
        }
        (rows, cols)
    }

    /// Solves `u_i + v_j = c_ij` on basic cells with `u_0 = 0`.
    fn potentials(&self) -> (Vec<Rational>, Vec<Rational>) {
        let (rows, cols) = self.adjacency();
        let mut u: Vec<Option<Rational>> = vec![None; self.m];
        let mut v: Vec<Option<Rational>> = vec![None; self.n];
        u[0] = Some(Rational::zero());
        let mut stack = vec![Node::Row(0)];
        while let Some(node) = stack.pop() {
            match node {
                Node::Row(i) => {
                    let ui = u[i].clone().expect("row potential set");
                    for &j in &rows[i] {
                        if v[j].is_none() {
                            v[j] = Some(&self.cost[i][j] - &ui);
                            stack.push(Node::Col(j));
                        }
                    }
                }
                Node::Col(j) => {
                    let vj = v[j].clone().expect("column potential set");
                    for &i in &cols[j] {
                        if u[i].is_none() {
                            u[i] = Some(&self.cost[i][j] - &vj);
                            stack.push(Node::Row(i));
                        }
                    }
                }
            }
        }
        let u = u.into_iter().map(|x| x.expect("basis spans all rows")).collect();
        let v = v.into_iter().map(|x| x.expect("basis spans all columns")).collect();
        (u, v)
    }

    fn entering(&self, u: &[Rational], v: &[Rational]) -> Option<(usize, usize)> {
        for i in 0..self.m {
            for j in 0..self.n {
                if self.basic[i][j].is_none() && (&self.cost[i][j] - &u[i] - &v[j]).is_negative() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Tree path from row `i` to column `j`, as the list of cells traversed.
    fn tree_path(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let (rows, cols) = self.adjacency();
        // Nodes: rows 0..m, columns m..m+n.
        let total = self.m + self.n;
        let mut parent: Vec<Option<usize>> = vec![None; total];
        let mut seen = vec![false; total];
        let mut queue = std::collections::VecDeque::from([i]);
        seen[i] = true;
        while let Some(node) = queue.pop_front() {
            if node == self.m + j {
                break;
            }
            let next: Vec<usize> = if node < self.m {
                rows[node].iter().map(|&c| self.m + c).collect()
            } else {
                cols[node - self.m].clone()
            };
            for nb in next {
                if !seen[nb] {
                    seen[nb] = true;
                    parent[nb] = Some(node);
                    queue.push_back(nb);
                }
            }
        }
        let mut cells = Vec::new();
        let mut node = self.m + j;
        while let Some(p) = parent[node] {
            let cell = if p < self.m {
                (p, node - self.m)
            } else {
                (node, p - self.m)
            };
            cells.push(cell);
            node = p;
        }
        debug_assert_eq!(node, i);
        cells.reverse();
        cells
    }

    fn pivot(&mut self, i: usize, j: usize) {
        // Path cells alternate starting with a decrease next to row i.
        let path = self.tree_path(i, j);
        let minus: Vec<(usize, usize)> = path.iter().copied().step_by(2).collect();
        let plus: Vec<(usize, usize)> = path.iter().copied().skip(1).step_by(2).collect();
        let mut leave = minus[0];
        let mut theta = self.basic[leave.0][leave.1].clone().unwrap();
        for &(a, b) in &minus[1..] {
            let x = self.basic[a][b].as_ref().unwrap();
            let better = *x < theta || (*x == theta && a * self.n + b < leave.0 * self.n + leave.1);
            if better {
                theta = x.clone();
                leave = (a, b);
            }
        }
        for &(a, b) in &minus {
            *self.basic[a][b].as_mut().unwrap() -= &theta;
        }
        for &(a, b) in &plus {
            *self.basic[a][b].as_mut().unwrap() += &theta;
        }
        self.basic[leave.0][leave.1] = None;
        self.basic[i][j] = Some(theta);
    }

    fn finish(self, u: Vec<Rational>, v: Vec<Rational>) -> Plan {
        let mut flow = Vec::new();
        let mut cost = Rational::zero();
        for i in 0..self.m {
            for j in 0..self.n {
                if let Some(x) = &self.basic[i][j] {
                    if !x.is_zero() {
                        cost += x * &self.cost[i][j];
                        flow.push((i, j, x.clone()));
                    }
                }
            }
        }
        Plan { flow, u, v, cost }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn check_plan(a: &[Rational], b: &[Rational], c: &[Vec<Rational>], p: &Plan) {
        let mut rows = vec![Rational::zero(); a.len()];
        let mut cols = vec![Rational::zero(); b.len()];
        for (i, j, x) in &p.flow {
            assert!(x.is_positive());
            rows[*i] += x;
            cols[*j] += x;
        }
        assert_eq!(rows, a);
        assert_eq!(cols, b);
        let dual: Rational = a.iter().zip(&p.u).map(|(x, y)| x * y).sum::<Rational>()
            + b.iter().zip(&p.v).map(|(x, y)| x * y).sum::<Rational>();
        assert_eq!(dual, p.cost);
        for i in 0..a.len() {
            for j in 0..b.len() {
                assert!(&p.u[i] + &p.v[j] <= c[i][j]);
            }
        }
    }

    #[test]
    fn textbook_instance() {
        let a = ints(&[20, 30, 25]);
        let b = ints(&[10, 10, 35, 20]);
        let c: Vec<Vec<Rational>> = [[8, 6, 10, 9], [9, 12, 13, 7], [14, 9, 16, 5]]
            .iter()
            .map(|r| ints(r))
            .collect();
        let p = solve(&a, &b, &c);
        check_plan(&a, &b, &c, &p);
        // Optimum cross-checked with an independent floating-point LP solver.
        assert_eq!(p.cost, int(675));
    }

    #[test]
    fn degenerate_instance() {
        let a = vec![ratio(1, 2), ratio(1, 2)];
        let b = vec![ratio(1, 2), ratio(1, 2)];
        let c = vec![ints(&[1, 0]), ints(&[0, 1])];
        let p = solve(&a, &b, &c);
        check_plan(&a, &b, &c, &p);
        assert!(p.cost.is_zero());
    }

    #[test]
    fn single_row() {
        let a = ints(&[3]);
        let b = ints(&[1, 2]);
        let c = vec![ints(&[4, 5])];
        let p = solve(&a, &b, &c);
        check_plan(&a, &b, &c, &p);
        assert_eq!(p.cost, int(14));
    }
}
