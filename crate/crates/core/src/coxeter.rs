//! Finite Coxeter groups as reflection groups, their element lists and
//! Cayley graphs.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Coxeter matrix `m_ij` of a rank-`k` system. Diagonal entries are stored as
/// 1 (the order of `s_i s_i`), off-diagonal entries are at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDatum {
    name: String,
    orders: Vec<Vec<u32>>,
}

/// The three rank-3 groups whose Cayley graphs are the Archimedean solids
/// (4,6,6), (4,6,8) and (4,6,10).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    A3,
    B3,
    H3,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::A3, Builtin::B3, Builtin::H3];

    /// Order of `s_2 s_3`; the other pairs are fixed at `m_12 = 2`, `m_13 = 3`.
    pub fn m23(self) -> u32 {
        match self {
            Builtin::A3 => 3,
            Builtin::B3 => 4,
            Builtin::H3 => 5,
        }
    }

    /// `eta = 2 cos(pi / m_23)` in closed form: 1, sqrt 2 and the golden ratio.
    pub fn eta(self) -> f64 {
        match self {
            Builtin::A3 => 1.0,
            Builtin::B3 => 2f64.sqrt(),
            Builtin::H3 => crate::GOLDEN_RATIO,
        }
    }

    pub fn datum(self) -> CoxeterDatum {
        let m = self.m23();
        CoxeterDatum::new(
            self.name(),
            vec![vec![1, 2, 3], vec![2, 1, m], vec![3, m, 1]],
        )
        .expect("built-in Coxeter matrices are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::A3 => "A3",
            Builtin::B3 => "B3",
            Builtin::H3 => "H3",
        }
    }

    /// Vertex configuration of the Archimedean solid carried by the Cayley graph.
    pub fn solid(self) -> &'static str {
        match self {
            Builtin::A3 => "(4,6,6)",
            Builtin::B3 => "(4,6,8)",
            Builtin::H3 => "(4,6,10)",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A3" => Ok(Builtin::A3),
            "B3" => Ok(Builtin::B3),
            "H3" => Ok(Builtin::H3),
            other => Err(Error::Usage(format!("unknown group {other:?}; expected A3, B3 or H3"))),
        }
    }
}

impl CoxeterDatum {
    pub fn new(name: impl Into<String>, orders: Vec<Vec<u32>>) -> Result<Self> {
        let k = orders.len();
        if k == 0 {
            return Err(Error::Dimension("empty Coxeter matrix".into()));
        }
        for (i, row) in orders.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension(format!("Coxeter matrix row {i} has length {}", row.len())));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 && m != 2 {
                    return Err(Error::Domain(format!("diagonal entry m_{i}{i} = {m}")));
                }
                if i != j && (m < 2 || orders[j][i] != m) {
                    return Err(Error::Domain(format!(
                        "m_{i}{j} must be symmetric and at least 2, got {m}"
                    )));
                }
            }
        }
        let mut orders = orders;
        for (i, row) in orders.iter_mut().enumerate() {
            row[i] = 1;
        }
        Ok(Self {
            name: name.into(),
            orders,
        })
    }

    /// Linear diagram `o-m1-o-m2-o...`, e.g. `[5, 3, 3]` for H4.
    pub fn linear(name: impl Into<String>, edges: &[u32]) -> Result<Self> {
        let k = edges.len() + 1;
        let mut orders = vec![vec![2; k]; k];
        for (i, &m) in edges.iter().enumerate() {
            orders[i][i + 1] = m;
            orders[i + 1][i] = m;
        }
        Self::new(name, orders)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Order of `s_i s_j` (1 on the diagonal).
    pub fn order(&self, i: usize, j: usize) -> u32 {
        self.orders[i][j]
    }

    /// `M_ij = -cos(pi / m_ij)`, `M_ii = 1`.
    pub fn gram_matrix(&self) -> Matrix {
        let k = self.rank();
        let mut m = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = if i == j {
                    1.0
                } else {
                    match self.orders[i][j] {
                        2 => 0.0,
                        3 => -0.5,
                        o => -(PI / o as f64).cos(),
                    }
                };
            }
        }
        m
    }

    /// `eta` when the datum has the rank-3 pattern `m_12 = 2, m_13 = 3`.
    pub(crate) fn rank3_eta(&self) -> Option<f64> {
        if self.rank() != 3 || self.orders[0][1] != 2 || self.orders[0][2] != 3 {
            return None;
        }
        Some(match self.orders[1][2] {
            2 => 0.0,
            3 => 1.0,
            4 => 2f64.sqrt(),
            5 => crate::GOLDEN_RATIO,
            m => 2.0 * (PI / m as f64).cos(),
        })
    }

    /// Inverse Gram matrix. For the rank-3 pattern of the built-ins the closed
    /// form `(1/rho) [[1+rho, eta, 2], [eta, 3, 2 eta], [2, 2 eta, 4]]` with
    /// `rho = 3 - eta^2` is used; otherwise a linear solve.
    pub fn gram_inverse(&self) -> Result<Matrix> {
        if let Some(eta) = self.rank3_eta() {
            let rho = 3.0 - eta * eta;
            if rho > 0.0 {
                return Ok(Matrix::from_rows(&[
                    [1.0 + rho, eta, 2.0],
                    [eta, 3.0, 2.0 * eta],
                    [2.0, 2.0 * eta, 4.0],
                ])?
                .scale(1.0 / rho));
            }
        }
        linalg::inverse(&self.gram_matrix())
    }
}

/// Unit normals `n_1..n_k` with Gram matrix `M` and `det(n_1..n_k) > 0`.
///
/// The roots are the rows of the Cholesky factor of `M`, which is lower
/// triangular with positive diagonal, so the orientation condition holds by
/// construction.
pub fn simple_roots(datum: &CoxeterDatum) -> Result<Vec<Vec<f64>>> {
    let l = linalg::cholesky(&datum.gram_matrix()).map_err(|_| {
        Error::NotFinite(format!("Gram matrix of {} is not positive definite", datum.name()))
    })?;
    Ok((0..datum.rank()).map(|i| l.row(i).to_vec()).collect())
}

/// `I - 2 n n^T` for a unit vector `n`.
pub fn reflection_matrix(n: &[f64]) -> Result<Matrix> {
    let len = linalg::norm(n);
    if (len - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm: len });
    }
    let k = n.len();
    let mut s = Matrix::identity(k);
    for i in 0..k {
        for j in 0..k {
            s[(i, j)] -= 2.0 * n[i] * n[j];
        }
    }
    Ok(s)
}

/// Entrywise tolerance for identifying two group elements.
pub const DEDUP_TOL: f64 = 1e-6;
/// Default cap on the number of generated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Lookup of matrices up to [`DEDUP_TOL`]: elements are bucketed by a fixed
/// generic linear functional, and a range query around the functional value
/// narrows the candidates to compare entrywise.
#[derive(Clone, Debug)]
struct ElementIndex {
    weights: Vec<f64>,
    by_key: BTreeMap<(Key, usize), ()>,
}

impl ElementIndex {
    fn new(dim: usize) -> Self {
        // Fractional parts of multiples of an irrational number: generic and
        // reproducible.
        let weights = (1..=dim * dim)
            .map(|i| ((i as f64) * 0.618_033_988_749_895).fract() + 0.1)
            .collect();
        Self {
            weights,
            by_key: BTreeMap::new(),
        }
    }

    fn key(&self, m: &Matrix) -> f64 {
        linalg::dot(&self.weights, m.as_slice())
    }

    fn find(&self, m: &Matrix, elements: &[Matrix]) -> Option<usize> {
        let key = self.key(m);
        // |key(a) - key(b)| <= sum(weights) * max|a_ij - b_ij|
        let radius = DEDUP_TOL * self.weights.iter().sum::<f64>();
        self.by_key
            .range((Key(key - radius), 0)..=(Key(key + radius), usize::MAX))
            .map(|(&(_, idx), _)| idx)
            .find(|&idx| elements[idx].max_abs_diff(m) < DEDUP_TOL)
    }

    fn insert(&mut self, m: &Matrix, idx: usize) {
        let key = self.key(m);
        self.by_key.insert((Key(key), idx), ());
    }
}

/// A finite reflection group: every element as an orthogonal matrix, plus the
/// right-multiplication table by the generators.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    datum: CoxeterDatum,
    roots: Vec<Vec<f64>>,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    /// `successors[g][j]` is the index of `elements[g] * generators[j]`.
    successors: Vec<Vec<usize>>,
    /// Length of a shortest word for each element.
    word_length: Vec<usize>,
    index: ElementIndex,
}

impl ReflectionGroup {
    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn simple_roots(&self) -> &[Vec<f64>] {
        &self.roots
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    /// Index of `element(g) * generator(j)`.
    pub fn successor(&self, g: usize, j: usize) -> usize {
        self.successors[g][j]
    }

    pub fn word_length(&self, g: usize) -> usize {
        self.word_length[g]
    }

    /// `det(n_1, ..., n_k)`.
    pub fn root_volume(&self) -> f64 {
        let m = Matrix::from_columns(&self.roots).expect("roots are k-vectors");
        linalg::det(&m).expect("square")
    }

    /// Index of the element equal to `m` within [`DEDUP_TOL`].
    pub fn find(&self, m: &Matrix) -> Option<usize> {
        self.index.find(m, &self.elements)
    }

    /// Index of `element(a) * element(b)`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let m = &self.elements[a] * &self.elements[b];
        self.find(&m).expect("group is closed under multiplication")
    }

    /// The permutation `i -> index(g * element_i)` of left multiplication by
    /// element `g`.
    pub fn left_action(&self, g: usize) -> Vec<usize> {
        (0..self.order()).map(|i| self.product(g, i)).collect()
    }

    /// The orbit `{ g p }` in element order (with repetitions).
    pub fn orbit(&self, p: &[f64]) -> Vec<Vec<f64>> {
        self.elements.iter().map(|g| g.mul_vec(p)).collect()
    }
}

/// Breadth-first closure of the generators under right multiplication.
pub fn generate_group(datum: &CoxeterDatum) -> Result<ReflectionGroup> {
    generate_group_with_cap(datum, DEFAULT_ELEMENT_CAP)
}

pub fn generate_group_with_cap(datum: &CoxeterDatum, cap: usize) -> Result<ReflectionGroup> {
    let roots = simple_roots(datum)?;
    let generators = roots
        .iter()
        .map(|n| reflection_matrix(n))
        .collect::<Result<Vec<_>>>()?;
    let k = datum.rank();

    let mut index = ElementIndex::new(k);
    let mut elements = vec![Matrix::identity(k)];
    let mut word_length = vec![0usize];
    index.insert(&elements[0], 0);
    let mut successors: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);

    while let Some(g) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for s in &generators {
            let prod = &elements[g] * s;
            let idx = match index.find(&prod, &elements) {
                Some(idx) => idx,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    let idx = elements.len();
                    index.insert(&prod, idx);
                    elements.push(prod);
                    word_length.push(word_length[g] + 1);
                    successors.push(Vec::new());
                    queue.push_back(idx);
                    idx
                }
            };
            row.push(idx);
        }
        successors[g] = row;
    }

    let group = ReflectionGroup {
        datum: datum.clone(),
        roots,
        generators,
        elements,
        successors,
        word_length,
        index,
    };

    // One more closure pass must not produce anything new.
    for g in 0..group.order() {
        for (j, s) in group.generators.iter().enumerate() {
            let prod = &group.elements[g] * s;
            if group.find(&prod) != Some(group.successors[g][j]) {
                return Err(Error::InvarianceFailure(format!(
                    "closure is unstable at element {g}, generator {j}"
                )));
            }
        }
    }
    let v = group.root_volume();
    if !(v > 0.0) {
        return Err(Error::Orientation { det: v });
    }
    Ok(group)
}

/// Undirected edge `{a, b}` (`a < b`) with its generator label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: usize,
}

/// Cayley graph with respect to the simple reflections. Edge classes are the
/// generator labels.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    adjacency: Vec<Vec<(usize, usize)>>,
    edges: Vec<Edge>,
    class_multiplicities: Vec<usize>,
    parity: Vec<u8>,
}

impl CayleyGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, label)` pairs of a vertex.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Neighbor of `v` across the edge with the given label.
    pub fn neighbor(&self, v: usize, label: usize) -> usize {
        self.adjacency[v]
            .iter()
            .find(|&&(_, l)| l == label)
            .map(|&(w, _)| w)
            .expect("every vertex has one edge per label")
    }

    pub fn class_count(&self) -> usize {
        self.class_multiplicities.len()
    }

    /// Number of edges of each class at a vertex.
    pub fn class_multiplicities(&self) -> &[usize] {
        &self.class_multiplicities
    }

    /// Word-length parity, a proper 2-colouring.
    pub fn color(&self, v: usize) -> u8 {
        self.parity[v]
    }

    pub fn is_bipartite(&self) -> bool {
        self.edges.iter().all(|e| self.parity[e.a] != self.parity[e.b])
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Length of the closed walk from `start` alternating labels `i`, `j`.
    pub fn alternating_cycle_length(&self, start: usize, i: usize, j: usize) -> usize {
        let mut v = start;
        let mut steps = 0;
        loop {
            v = self.neighbor(v, if steps % 2 == 0 { i } else { j });
            steps += 1;
            if v == start && steps % 2 == 0 {
                return steps;
            }
        }
    }
}

pub fn cayley_graph(group: &ReflectionGroup) -> CayleyGraph {
    let n = group.order();
    let k = group.rank();
    let mut adjacency = vec![Vec::with_capacity(k); n];
    let mut edges = Vec::with_capacity(n * k / 2);
    for g in 0..n {
        for j in 0..k {
            let h = group.successor(g, j);
            adjacency[g].push((h, j));
            if g < h {
                edges.push(Edge { a: g, b: h, label: j });
            }
        }
    }
    edges.sort();
    let parity = (0..n).map(|g| (group.word_length(g) % 2) as u8).collect();
    CayleyGraph {
        adjacency,
        edges,
        class_multiplicities: vec![1; k],
        parity,
    }
}
