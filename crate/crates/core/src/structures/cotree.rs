use std::fmt;
use std::str::FromStr;

use super::{compact, Graph, GraphBuilder, SchroderNode, SchroderTree, Sign, StructureError};

/// Decoration of an internal cotree node: `Zero` is disjoint union,
/// `One` is join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decoration {
    Zero,
    One,
}

impl Decoration {
    pub fn flip(self) -> Self {
        match self {
            Decoration::Zero => Decoration::One,
            Decoration::One => Decoration::Zero,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CotreeNode {
    /// 0-based vertex label.
    Leaf(usize),
    Internal { decoration: Decoration, children: Vec<usize> },
}

/// Labeled cotree in canonical form: nodes are stored in pre-order with the
/// root at index 0, decorations alternate, every internal node has at
/// least two children, leaves carry exactly the labels `0..n`, and children
/// are ordered by decreasing size, ties by increasing smallest label.
///
/// Since siblings have disjoint label sets the order is total, so two
/// cotrees are equal as unordered trees iff they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
    n: usize,
}

impl Cotree {
    pub fn leaf() -> Self {
        Cotree { nodes: vec![CotreeNode::Leaf(0)], n: 1 }
    }

    /// Validates and canonicalises an arbitrary node arena.
    pub fn from_nodes(nodes: Vec<CotreeNode>, root: usize) -> Result<Self, StructureError> {
        let bad = |m: &str| Err(StructureError::InvalidTree(m.to_string()));
        if root >= nodes.len() {
            return bad("root index out of range");
        }
        // Reachability check and a parent-before-child order.
        let mut seen = vec![false; nodes.len()];
        let mut order = Vec::with_capacity(nodes.len());
        let mut stack = vec![root];
        let mut leaves = 0;
        while let Some(v) = stack.pop() {
            if seen[v] {
                return bad("node reached twice");
            }
            seen[v] = true;
            order.push(v);
            match &nodes[v] {
                CotreeNode::Leaf(_) => leaves += 1,
                CotreeNode::Internal { decoration, children } => {
                    if children.len() < 2 {
                        return bad("internal node with fewer than two children");
                    }
                    for &c in children {
                        if c >= nodes.len() {
                            return bad("child index out of range");
                        }
                        if let CotreeNode::Internal { decoration: d, .. } = &nodes[c] {
                            if d == decoration {
                                return bad("decorations do not alternate");
                            }
                        }
                        stack.push(c);
                    }
                }
            }
        }
        let mut label_seen = vec![false; leaves];
        for &v in &order {
            if let CotreeNode::Leaf(l) = nodes[v] {
                if l >= leaves || label_seen[l] {
                    return bad("leaf labels must be exactly 0..n");
                }
                label_seen[l] = true;
            }
        }
        Ok(canonical_layout(&nodes, root, &order, leaves))
    }

    /// Number of leaves.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[CotreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> &CotreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &CotreeNode {
        &self.nodes[id]
    }

    /// Leaf count of every subtree, indexed by node id.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![0usize; self.nodes.len()];
        for v in (0..self.nodes.len()).rev() {
            size[v] = match &self.nodes[v] {
                CotreeNode::Leaf(_) => 1,
                CotreeNode::Internal { children, .. } => children.iter().map(|&c| size[c]).sum(),
            };
        }
        size
    }

    /// Same tree with every decoration flipped; the cograph becomes its
    /// complement.
    pub fn swapped(&self) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|nd| match nd {
                CotreeNode::Leaf(l) => CotreeNode::Leaf(*l),
                CotreeNode::Internal { decoration, children } => {
                    CotreeNode::Internal { decoration: decoration.flip(), children: children.clone() }
                }
            })
            .collect();
        Cotree { nodes, n: self.n }
    }

    pub fn to_graph(&self) -> Graph {
        // In pre-order every subtree's leaves are contiguous in the leaf sequence.
        let sizes = self.subtree_sizes();
        let mut leaf_seq = Vec::with_capacity(self.n);
        let mut first_leaf = vec![0usize; self.nodes.len()];
        for (v, nd) in self.nodes.iter().enumerate() {
            first_leaf[v] = leaf_seq.len();
            if let CotreeNode::Leaf(l) = nd {
                leaf_seq.push(*l);
            }
        }
        let mut b = GraphBuilder::new(self.n);
        for nd in &self.nodes {
            if let CotreeNode::Internal { decoration: Decoration::One, children } = nd {
                for (a, &ca) in children.iter().enumerate() {
                    let ra = &leaf_seq[first_leaf[ca]..first_leaf[ca] + sizes[ca]];
                    for &cb in &children[a + 1..] {
                        let rb = &leaf_seq[first_leaf[cb]..first_leaf[cb] + sizes[cb]];
                        for &x in ra {
                            for &y in rb {
                                b.add_edge_unchecked(x, y);
                            }
                        }
                    }
                }
            }
        }
        b.build()
    }

    /// Recognition by recursive decomposition into components (0-nodes) and
    /// co-components (1-nodes).
    pub fn from_graph(g: &Graph) -> Result<Self, StructureError> {
        let n = g.n();
        if n == 0 {
            return Err(StructureError::InvalidTree("empty graph has no cotree".into()));
        }
        let mut nodes: Vec<CotreeNode> = Vec::new();
        let mut scratch = Scratch::new(n);
        // Work items: vertex set and the slot in `nodes` to fill.
        nodes.push(CotreeNode::Leaf(0));
        let mut work: Vec<(Vec<usize>, usize)> = vec![((0..n).collect(), 0)];
        while let Some((set, slot)) = work.pop() {
            if set.len() == 1 {
                nodes[slot] = CotreeNode::Leaf(set[0]);
                continue;
            }
            let (decoration, parts) = {
                let comps = scratch.components(g, &set);
                if comps.len() > 1 {
                    (Decoration::Zero, comps)
                } else {
                    let co = scratch.co_components(g, &set);
                    if co.len() > 1 {
                        (Decoration::One, co)
                    } else {
                        let mut witness = set;
                        witness.sort_unstable();
                        return Err(StructureError::NotACograph { witness });
                    }
                }
            };
            let mut children = Vec::with_capacity(parts.len());
            for part in parts {
                let id = nodes.len();
                nodes.push(CotreeNode::Leaf(0));
                children.push(id);
                work.push((part, id));
            }
            nodes[slot] = CotreeNode::Internal { decoration, children };
        }
        let order = preorder(&nodes, 0);
        Ok(canonical_layout(&nodes, 0, &order, n))
    }

    pub fn from_schroder(t: &SchroderTree) -> Self {
        let mut next_label = 0;
        let nodes = t
            .nodes()
            .iter()
            .map(|nd| match nd {
                SchroderNode::Leaf => {
                    next_label += 1;
                    CotreeNode::Leaf(next_label - 1)
                }
                SchroderNode::Internal { sign, children } => CotreeNode::Internal {
                    decoration: match sign {
                        Sign::Minus => Decoration::One,
                        Sign::Plus => Decoration::Zero,
                    },
                    children: children.clone(),
                },
            })
            .collect::<Vec<_>>();
        // Schröder nodes are in pre-order, so leaves are numbered left to right.
        let order = preorder(&nodes, 0);
        canonical_layout(&nodes, 0, &order, t.n())
    }
}

/// Marks and queues reused across recognition steps.
struct Scratch {
    stamp: Vec<u32>,
    nbr: Vec<u32>,
    epoch: u32,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { stamp: vec![0; n], nbr: vec![0; n], epoch: 0 }
    }

    fn bump(&mut self) -> u32 {
        self.epoch += 1;
        self.epoch
    }

    fn components(&mut self, g: &Graph, set: &[usize]) -> Vec<Vec<usize>> {
        let member = self.bump();
        for &v in set {
            self.stamp[v] = member;
        }
        let visited = self.bump();
        let mut comps = Vec::new();
        for &s in set {
            if self.stamp[s] == visited {
                continue;
            }
            self.stamp[s] = visited;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in g.neighbors(v) {
                    if self.stamp[w] == member {
                        self.stamp[w] = visited;
                        comp.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Components of the complement of `g[set]`, without materialising it.
    fn co_components(&mut self, g: &Graph, set: &[usize]) -> Vec<Vec<usize>> {
        let mut unvisited: Vec<usize> = set.to_vec();
        let mut comps = Vec::new();
        while let Some(s) = unvisited.pop() {
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                let mark = self.bump();
                for w in g.neighbors(v) {
                    self.nbr[w] = mark;
                }
                let mut kept = Vec::with_capacity(unvisited.len());
                for &w in &unvisited {
                    if self.nbr[w] == mark {
                        kept.push(w);
                    } else {
                        comp.push(w);
                    }
                }
                unvisited = kept;
            }
            comps.push(comp);
        }
        comps
    }
}

fn preorder(nodes: &[CotreeNode], root: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(nodes.len());
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        if let CotreeNode::Internal { children, .. } = &nodes[v] {
            stack.extend(children.iter().rev());
        }
    }
    order
}

/// Re-lays out a validated arena in canonical pre-order. `order` lists the
/// reachable nodes parents-first.
fn canonical_layout(nodes: &[CotreeNode], root: usize, order: &[usize], n: usize) -> Cotree {
    let len = nodes.len();
    let mut size = vec![0usize; len];
    let mut min_label = vec![usize::MAX; len];
    let mut count = vec![0usize; len];
    for &v in order.iter().rev() {
        match &nodes[v] {
            CotreeNode::Leaf(l) => {
                size[v] = 1;
                min_label[v] = *l;
                count[v] = 1;
            }
            CotreeNode::Internal { children, .. } => {
                size[v] = children.iter().map(|&c| size[c]).sum();
                min_label[v] = children.iter().map(|&c| min_label[c]).min().unwrap();
                count[v] = 1 + children.iter().map(|&c| count[c]).sum::<usize>();
            }
        }
    }
    let mut out: Vec<CotreeNode> = vec![CotreeNode::Leaf(0); count[root]];
    let mut stack = vec![(root, 0usize)];
    while let Some((v, id)) = stack.pop() {
        match &nodes[v] {
            CotreeNode::Leaf(l) => out[id] = CotreeNode::Leaf(*l),
            CotreeNode::Internal { decoration, children } => {
                let mut sorted = children.clone();
                sorted.sort_unstable_by_key(|&c| (std::cmp::Reverse(size[c]), min_label[c]));
                let mut next = id + 1;
                let mut ids = Vec::with_capacity(sorted.len());
                for &c in &sorted {
                    ids.push(next);
                    stack.push((c, next));
                    next += count[c];
                }
                out[id] = CotreeNode::Internal { decoration: *decoration, children: ids };
            }
        }
    }
    Cotree { nodes: out, n }
}

/// `L<k>` for leaves (1-based), `d(child,child,...)` for internal nodes.
impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        while let Some((v, i)) = stack.pop() {
            match &self.nodes[v] {
                CotreeNode::Leaf(l) => write!(f, "L{}", l + 1)?,
                CotreeNode::Internal { decoration, children } => {
                    if i == 0 {
                        write!(f, "{}(", decoration.bit())?;
                    }
                    if i == children.len() {
                        write!(f, ")")?;
                        continue;
                    }
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    stack.push((v, i + 1));
                    stack.push((children[i], 0));
                    continue;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Cotree {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = compact(s);
        let b = s.as_bytes();
        let err = |pos: usize, m: &str| StructureError::Parse(format!("{m} at byte {pos}"));
        let mut nodes: Vec<CotreeNode> = Vec::new();
        // Open internal nodes: (decoration, children so far).
        let mut open: Vec<(Decoration, Vec<usize>)> = Vec::new();
        let mut root = None;
        let mut pos = 0;
        loop {
            // Expect a tree at `pos`.
            let finished = match b.get(pos) {
                Some(b'L') => {
                    let start = pos + 1;
                    let mut end = start;
                    while end < b.len() && b[end].is_ascii_digit() {
                        end += 1;
                    }
                    let label: usize = s[start..end].parse().map_err(|_| err(pos, "bad leaf label"))?;
                    if label == 0 {
                        return Err(err(pos, "leaf labels are 1-based"));
                    }
                    pos = end;
                    nodes.push(CotreeNode::Leaf(label - 1));
                    Some(nodes.len() - 1)
                }
                Some(c @ (b'0' | b'1')) if b.get(pos + 1) == Some(&b'(') => {
                    let d = if *c == b'0' { Decoration::Zero } else { Decoration::One };
                    open.push((d, Vec::new()));
                    pos += 2;
                    None
                }
                _ => return Err(err(pos, "expected a leaf or a decorated node")),
            };
            let Some(mut done) = finished else { continue };
            // Close as many nodes as the input allows.
            loop {
                let Some((_, kids)) = open.last_mut() else {
                    root = Some(done);
                    break;
                };
                kids.push(done);
                match b.get(pos) {
                    Some(b',') => {
                        pos += 1;
                        break;
                    }
                    Some(b')') => {
                        pos += 1;
                        let (decoration, children) = open.pop().unwrap();
                        nodes.push(CotreeNode::Internal { decoration, children });
                        done = nodes.len() - 1;
                    }
                    _ => return Err(err(pos, "expected ',' or ')'")),
                }
            }
            if root.is_some() {
                break;
            }
        }
        if pos != b.len() {
            return Err(err(pos, "trailing input"));
        }
        Cotree::from_nodes(nodes, root.unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Cotree {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_text_is_stable() {
        assert_eq!(t("1(0(L1,L2),L3)").to_string(), "1(0(L1,L2),L3)");
        assert_eq!(t("1( L3 , 0(L2,L1) )").to_string(), "1(0(L1,L2),L3)");
        assert_eq!(t("L1").to_string(), "L1");
        assert_eq!(t("0(L2,L1,L3)").to_string(), "0(L1,L2,L3)");
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "L0", "L2", "1(L1)", "1(L1,1(L2,L3))", "0(L1,L1)", "2(L1,L2)", "0(L1,L2", "0(L1,L2))"] {
            assert!(bad.parse::<Cotree>().is_err(), "{bad}");
        }
    }

    #[test]
    fn path_on_three_vertices() {
        // 1 - 3 - 2
        let tree = t("1(0(L1,L2),L3)");
        let g = tree.to_graph();
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(Cotree::from_graph(&g).unwrap(), tree);
    }

    #[test]
    fn p4_and_c5_are_not_cographs() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        match Cotree::from_graph(&p4) {
            Err(StructureError::NotACograph { witness }) => assert_eq!(witness, vec![0, 1, 2, 3]),
            other => panic!("{other:?}"),
        }
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(Cotree::from_graph(&c5).is_err());
    }

    #[test]
    fn swap_complements_the_graph() {
        let tree = t("1(0(L1,L2,1(L4,L5)),L3)");
        assert_eq!(tree.swapped().to_graph(), tree.to_graph().complement());
        assert_eq!(tree.swapped().swapped(), tree);
    }

    #[test]
    fn from_schroder_labels_left_to_right() {
        let s: SchroderTree = "+(-(L,L),L)".parse().unwrap();
        assert_eq!(Cotree::from_schroder(&s).to_string(), "0(1(L1,L2),L3)");
    }
}
