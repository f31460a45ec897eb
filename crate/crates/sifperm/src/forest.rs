//! The bijection between 231-avoiders and ordered forests.
//!
//! Reading the permutation left to right, the parent of each entry is its
//! nearest earlier larger entry; entries with no earlier larger entry (the
//! left-to-right maxima) become roots. Sibling labels then increase left to
//! right, preorder visits vertices in position order, and at every vertex
//!
//! ```text
//!   sigma(k) - k = descendants - depth
//! ```
//!
//! which also reconstructs the permutation from the bare forest shape: the
//! bijection is fundamentally shape-level, with `C_n` shapes on `n` vertices.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error("permutation contains 231; the forest map is defined on avoiders")]
    Contains231,
    #[error("vertex labels must partition 1..={0}")]
    BadLabels(usize),
    #[error("sibling labels must increase left to right")]
    SiblingOrder,
    #[error("unbalanced parentheses in forest literal {0:?}")]
    Unbalanced(String),
    #[error("unexpected character {0:?} in forest literal")]
    BadCharacter(char),
}

/// An unlabeled ordered forest: what survives of a permutation after the
/// labels are erased, and all the bijection actually needs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ForestShape {
    trees: Vec<ShapeNode>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShapeNode {
    children: Vec<ShapeNode>,
}

/// A labeled ordered forest; labels partition `1..=n` and sibling labels
/// strictly increase left to right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedForest {
    trees: Vec<ForestNode>,
    size: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ForestNode {
    pub label: usize,
    pub children: Vec<ForestNode>,
}

/// Per-vertex and per-forest statistics, vertices listed in preorder.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexStats {
    pub vertices: Vec<VertexInfo>,
    /// vertices with equally many descendants and ancestors
    pub fixed_point_count: usize,
    /// pairs (v, w) with w the only child of v and descd(w) = depth(v)
    pub adjacent_pair_count: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VertexInfo {
    /// preorder position, 1-indexed
    pub position: usize,
    pub label: usize,
    pub descendants: usize,
    pub depth: usize,
}

impl ShapeNode {
    fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(ShapeNode::vertex_count).sum::<usize>()
    }
}

impl ForestShape {
    pub fn new(trees: Vec<ShapeNode>) -> Self {
        ForestShape { trees }
    }

    pub fn trees(&self) -> &[ShapeNode] {
        &self.trees
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(ShapeNode::vertex_count).sum()
    }

    /// All forest shapes with `n` vertices (there are `C_n` of them),
    /// ordered with shorter first trees first.
    pub fn all_with_vertices(n: usize) -> Vec<ForestShape> {
        fn forests(n: usize) -> Vec<Vec<ShapeNode>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for children in forests(first - 1) {
                    let tree = ShapeNode { children };
                    for rest in forests(n - first) {
                        let mut forest = Vec::with_capacity(rest.len() + 1);
                        forest.push(tree.clone());
                        forest.extend(rest);
                        out.push(forest);
                    }
                }
            }
            out
        }
        forests(n).into_iter().map(ForestShape::new).collect()
    }
}

impl fmt::Display for ForestShape {
    /// Canonical balanced-parentheses form, one group per tree, trees
    /// separated by single spaces: `(()()) () ((()))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_node(node: &ShapeNode, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "(")?;
            for c in &node.children {
                write_node(c, f)?;
            }
            write!(f, ")")
        }
        for (i, tree) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write_node(tree, f)?;
        }
        Ok(())
    }
}

impl FromStr for ForestShape {
    type Err = ForestError;

    /// Whitespace-insensitive: any amount of whitespace may separate (or
    /// appear inside) the parenthesis groups.
    fn from_str(s: &str) -> Result<Self, ForestError> {
        let mut trees = Vec::new();
        let mut stack: Vec<Vec<ShapeNode>> = Vec::new();
        for c in s.chars() {
            match c {
                '(' => stack.push(Vec::new()),
                ')' => {
                    let children = stack.pop().ok_or_else(|| ForestError::Unbalanced(s.into()))?;
                    let node = ShapeNode { children };
                    match stack.last_mut() {
                        Some(parent) => parent.push(node),
                        None => trees.push(node),
                    }
                }
                c if c.is_whitespace() => {}
                c => return Err(ForestError::BadCharacter(c)),
            }
        }
        if !stack.is_empty() {
            return Err(ForestError::Unbalanced(s.into()));
        }
        Ok(ForestShape { trees })
    }
}

impl ForestNode {
    fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(ForestNode::vertex_count).sum::<usize>()
    }

    fn strip(&self) -> ShapeNode {
        ShapeNode {
            children: self.children.iter().map(ForestNode::strip).collect(),
        }
    }
}

impl OrderedForest {
    /// Validates the labeling invariants: labels partition `1..=n` and
    /// sibling labels strictly increase.
    pub fn new(trees: Vec<ForestNode>) -> Result<Self, ForestError> {
        let size: usize = trees.iter().map(ForestNode::vertex_count).sum();
        let mut seen = vec![false; size + 1];
        fn check(nodes: &[ForestNode], seen: &mut [bool]) -> Result<(), ForestError> {
            for pair in nodes.windows(2) {
                if pair[0].label >= pair[1].label {
                    return Err(ForestError::SiblingOrder);
                }
            }
            for node in nodes {
                if node.label == 0 || node.label >= seen.len() || seen[node.label] {
                    return Err(ForestError::BadLabels(seen.len() - 1));
                }
                seen[node.label] = true;
                check(&node.children, seen)?;
            }
            Ok(())
        }
        check(&trees, &mut seen)?;
        Ok(OrderedForest { trees, size })
    }

    pub fn trees(&self) -> &[ForestNode] {
        &self.trees
    }

    pub fn vertex_count(&self) -> usize {
        self.size
    }

    pub fn shape(&self) -> ForestShape {
        ForestShape {
            trees: self.trees.iter().map(ForestNode::strip).collect(),
        }
    }

    /// Vertex labels in preorder (trees left to right).
    pub fn preorder_labels(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size);
        fn go(node: &ForestNode, out: &mut Vec<usize>) {
            out.push(node.label);
            for c in &node.children {
                go(c, out);
            }
        }
        for t in &self.trees {
            go(t, &mut out);
        }
        out
    }
}

impl fmt::Display for OrderedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape())
    }
}

/// Forest of a 231-avoider: parent = nearest earlier larger entry, roots are
/// the left-to-right maxima. Children end up in increasing label order
/// automatically; this is checked by construction.
pub fn to_forest(p: &Permutation) -> Result<OrderedForest, ForestError> {
    let pat231: Permutation = "231".parse().expect("valid");
    if p.contains(&pat231) {
        return Err(ForestError::Contains231);
    }
    // stack of indices into `nodes` forming the current right spine,
    // values decreasing from bottom to top
    let mut roots: Vec<ForestNode> = Vec::new();
    let mut spine: Vec<ForestNode> = Vec::new();
    let attach = |spine: &mut Vec<ForestNode>, roots: &mut Vec<ForestNode>, node: ForestNode| {
        match spine.last_mut() {
            Some(parent) => parent.children.push(node),
            None => roots.push(node),
        }
    };
    for v in p.iter() {
        while spine.last().is_some_and(|top| top.label < v) {
            let done = spine.pop().expect("nonempty");
            attach(&mut spine, &mut roots, done);
        }
        spine.push(ForestNode {
            label: v,
            children: Vec::new(),
        });
    }
    while let Some(done) = spine.pop() {
        attach(&mut spine, &mut roots, done);
    }
    OrderedForest::new(roots)
}

/// The unique 231-avoider whose forest has the given shape: position `k` is
/// the `k`-th vertex in preorder and its value is `k + descendants - depth`.
pub fn to_permutation(shape: &ForestShape) -> Permutation {
    let mut values = Vec::with_capacity(shape.vertex_count());
    fn go(node: &ShapeNode, depth: usize, values: &mut Vec<usize>) {
        let position = values.len() + 1;
        let descendants = node.vertex_count() - 1;
        values.push(position + descendants - depth);
        for c in &node.children {
            go(c, depth + 1, values);
        }
    }
    for tree in &shape.trees {
        go(tree, 0, &mut values);
    }
    Permutation::new(values).expect("shape reconstruction yields a permutation")
}

/// Per-vertex descendant/depth counts and the two forest statistics.
pub fn forest_stats(forest: &OrderedForest) -> VertexStats {
    let mut vertices = Vec::with_capacity(forest.vertex_count());
    let mut fixed_point_count = 0;
    let mut adjacent_pair_count = 0;
    fn go(
        node: &ForestNode,
        depth: usize,
        vertices: &mut Vec<VertexInfo>,
        fp: &mut usize,
        adt: &mut usize,
    ) -> usize {
        let position = vertices.len() + 1;
        let index = vertices.len();
        vertices.push(VertexInfo {
            position,
            label: node.label,
            descendants: 0,
            depth,
        });
        let mut descendants = 0;
        for c in &node.children {
            descendants += 1 + go(c, depth + 1, vertices, fp, adt);
        }
        vertices[index].descendants = descendants;
        if descendants == depth {
            *fp += 1;
        }
        if node.children.len() == 1 {
            // descd(child) = size of the child subtree - 1 = descendants - 1
            if descendants - 1 == depth {
                *adt += 1;
            }
        }
        descendants
    }
    for tree in &forest.trees {
        go(
            tree,
            0,
            &mut vertices,
            &mut fixed_point_count,
            &mut adjacent_pair_count,
        );
    }
    VertexStats {
        vertices,
        fixed_point_count,
        adjacent_pair_count,
    }
}
