use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

/// Branching-node type, fixed by the shape of the two children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeType {
    /// two leaves; azimuth in [0, 2π)
    A,
    /// leaf on the left, subtree on the right; angle in [0, π]
    B,
    /// subtree on the left, leaf on the right; angle in [−π/2, π/2]
    BPrime,
    /// two subtrees; angle in [0, π/2]
    C,
}

impl NodeType {
    pub fn token(self) -> &'static str {
        match self {
            NodeType::A => "a",
            NodeType::B => "b",
            NodeType::BPrime => "b'",
            NodeType::C => "c",
        }
    }

    /// Closed angle interval; for type a the upper end is excluded.
    pub fn range(self) -> (f64, f64) {
        match self {
            NodeType::A => (0.0, 2.0 * PI),
            NodeType::B => (0.0, PI),
            NodeType::BPrime => (-0.5 * PI, 0.5 * PI),
            NodeType::C => (0.0, 0.5 * PI),
        }
    }

    pub fn range_label(self) -> &'static str {
        match self {
            NodeType::A => "[0, 2pi)",
            NodeType::B => "[0, pi]",
            NodeType::BPrime => "[-pi/2, pi/2]",
            NodeType::C => "[0, pi/2]",
        }
    }

    fn from_children(left: &Child, right: &Child) -> Self {
        match (left, right) {
            (Child::Leaf(_), Child::Leaf(_)) => NodeType::A,
            (Child::Leaf(_), Child::Branch(_)) => NodeType::B,
            (Child::Branch(_), Child::Leaf(_)) => NodeType::BPrime,
            (Child::Branch(_), Child::Branch(_)) => NodeType::C,
        }
    }
}

/// Child slot of a branching node: a leaf (Cartesian coordinate index) or
/// another branching node (preorder index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Child {
    Leaf(usize),
    Branch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TreeNode {
    pub node_type: NodeType,
    pub left: Child,
    pub right: Child,
    pub left_leaves: usize,
    pub right_leaves: usize,
}

impl TreeNode {
    /// S-value of the left subtree: leaf count − 2.
    pub fn s_left(&self) -> f64 {
        self.left_leaves as f64 - 2.0
    }

    pub fn s_right(&self) -> f64 {
        self.right_leaves as f64 - 2.0
    }
}

/// Polyspherical coordinate tree. Branching nodes are stored in preorder,
/// so the root is node 0 and the leaves are x₁…x_d from left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Tree {
    nodes: Vec<TreeNode>,
    dimension: usize,
}

/// Shape used to build trees programmatically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(l: Shape, r: Shape) -> Shape {
        Shape::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Canonical representative under left-right mirroring of subtrees.
    pub fn canonical(&self) -> Shape {
        match self {
            Shape::Leaf => Shape::Leaf,
            Shape::Node(l, r) => {
                let (a, b) = (l.canonical(), r.canonical());
                if a <= b {
                    Shape::node(a, b)
                } else {
                    Shape::node(b, a)
                }
            }
        }
    }
}

impl Tree {
    /// Builds a tree from a shape; the shape must contain a branching node.
    pub fn from_shape(shape: &Shape) -> Option<Tree> {
        if matches!(shape, Shape::Leaf) {
            return None;
        }
        let mut nodes = Vec::new();
        let mut leaf = 0;
        build(shape, &mut nodes, &mut leaf);
        Some(Tree { nodes, dimension: leaf })
    }

    pub fn to_shape(&self) -> Shape {
        self.shape_at(Child::Branch(0))
    }

    fn shape_at(&self, c: Child) -> Shape {
        match c {
            Child::Leaf(_) => Shape::Leaf,
            Child::Branch(i) => Shape::node(self.shape_at(self.nodes[i].left), self.shape_at(self.nodes[i].right)),
        }
    }

    /// Standard polyspherical tree b^{d−2}a.
    pub fn standard(d: usize) -> Option<Tree> {
        if d < 2 {
            return None;
        }
        let mut s = Shape::node(Shape::Leaf, Shape::Leaf);
        for _ in 0..d - 2 {
            s = Shape::node(Shape::Leaf, s);
        }
        Tree::from_shape(&s)
    }

    /// Generalized Hopf tree on R^{2^q}: V₂ = a, V_{2^q} = c V V.
    pub fn hopf(q: u32) -> Option<Tree> {
        if q == 0 || q > 12 {
            return None;
        }
        fn v(q: u32) -> Shape {
            if q == 1 {
                Shape::node(Shape::Leaf, Shape::Leaf)
            } else {
                Shape::node(v(q - 1), v(q - 1))
            }
        }
        Tree::from_shape(&v(q))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    pub fn branch_count(&self) -> usize {
        self.nodes.len()
    }

    /// Preorder indices of the type-a nodes, left to right.
    pub fn azimuthal_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].node_type == NodeType::A)
            .collect()
    }

    /// Preorder token sequence.
    pub fn tokens(&self) -> Vec<NodeType> {
        self.nodes.iter().map(|n| n.node_type).collect()
    }

    /// Path from the root to node `i`: (ancestor, went_right) pairs.
    pub fn path_to(&self, target: usize) -> Vec<(usize, bool)> {
        let mut path = Vec::new();
        self.find(0, target, &mut path);
        path
    }

    fn find(&self, at: usize, target: usize, path: &mut Vec<(usize, bool)>) -> bool {
        if at == target {
            return true;
        }
        let n = &self.nodes[at];
        for (c, right) in [(n.left, false), (n.right, true)] {
            if let Child::Branch(j) = c {
                path.push((at, right));
                if self.find(j, target, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
}

fn build(shape: &Shape, nodes: &mut Vec<TreeNode>, leaf: &mut usize) -> (Child, usize) {
    match shape {
        Shape::Leaf => {
            let c = Child::Leaf(*leaf);
            *leaf += 1;
            (c, 1)
        }
        Shape::Node(l, r) => {
            let idx = nodes.len();
            nodes.push(TreeNode {
                node_type: NodeType::A,
                left: Child::Leaf(0),
                right: Child::Leaf(0),
                left_leaves: 0,
                right_leaves: 0,
            });
            let (lc, ln) = build(l, nodes, leaf);
            let (rc, rn) = build(r, nodes, leaf);
            nodes[idx] = TreeNode {
                node_type: NodeType::from_children(&lc, &rc),
                left: lc,
                right: rc,
                left_leaves: ln,
                right_leaves: rn,
            };
            (Child::Branch(idx), ln + rn)
        }
    }
}

/// Canonical spelling with runs of equal tokens compressed, e.g. "b^4a".
pub fn format_tree(t: &Tree) -> String {
    let toks = t.tokens();
    let mut out = String::new();
    let mut i = 0;
    while i < toks.len() {
        let mut j = i + 1;
        while j < toks.len() && toks[j] == toks[i] {
            j += 1;
        }
        out.push_str(toks[i].token());
        if j - i > 1 {
            out.push('^');
            out.push_str(&(j - i).to_string());
        }
        i = j;
    }
    out
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tree(self))
    }
}
