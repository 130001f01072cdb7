use std::fmt;
use std::str::FromStr;

use super::{compact, Permutation, StructureError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// Direct sum.
    Plus,
    /// Skew sum.
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchroderNode {
    Leaf,
    Internal { sign: Sign, children: Vec<usize> },
}

/// Plane Schröder tree with alternating signs, stored in pre-order with the
/// root at index 0; every internal node has at least two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchroderTree {
    nodes: Vec<SchroderNode>,
    n: usize,
}

impl SchroderTree {
    pub fn leaf() -> Self {
        SchroderTree { nodes: vec![SchroderNode::Leaf], n: 1 }
    }

    /// Validates an arbitrary arena and lays it out in pre-order.
    pub fn from_nodes(nodes: Vec<SchroderNode>, root: usize) -> Result<Self, StructureError> {
        let bad = |m: &str| Err(StructureError::InvalidTree(m.to_string()));
        if root >= nodes.len() {
            return bad("root index out of range");
        }
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if seen[v] {
                return bad("node reached twice");
            }
            seen[v] = true;
            if let SchroderNode::Internal { sign, children } = &nodes[v] {
                if children.len() < 2 {
                    return bad("internal node with fewer than two children");
                }
                for &c in children {
                    if c >= nodes.len() {
                        return bad("child index out of range");
                    }
                    if matches!(&nodes[c], SchroderNode::Internal { sign: s, .. } if s == sign) {
                        return bad("signs do not alternate");
                    }
                    stack.push(c);
                }
            }
        }
        Ok(preorder_layout(&nodes, root))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[SchroderNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &SchroderNode {
        &self.nodes[id]
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![0usize; self.nodes.len()];
        for v in (0..self.nodes.len()).rev() {
            size[v] = match &self.nodes[v] {
                SchroderNode::Leaf => 1,
                SchroderNode::Internal { children, .. } => children.iter().map(|&c| size[c]).sum(),
            };
        }
        size
    }

    /// All signs flipped: the permutation is complemented.
    pub fn swapped(&self) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|nd| match nd {
                SchroderNode::Leaf => SchroderNode::Leaf,
                SchroderNode::Internal { sign, children } => {
                    SchroderNode::Internal { sign: sign.flip(), children: children.clone() }
                }
            })
            .collect();
        SchroderTree { nodes, n: self.n }
    }

    pub fn to_permutation(&self) -> Permutation {
        let size = self.subtree_sizes();
        let mut value_offset = vec![0usize; self.nodes.len()];
        let mut values = Vec::with_capacity(self.n);
        // Pre-order visits parents first and leaves left to right.
        for v in 0..self.nodes.len() {
            match &self.nodes[v] {
                SchroderNode::Leaf => values.push(value_offset[v] + 1),
                SchroderNode::Internal { sign, children } => {
                    let mut acc = value_offset[v];
                    let iter: Box<dyn Iterator<Item = &usize>> = match sign {
                        Sign::Plus => Box::new(children.iter()),
                        Sign::Minus => Box::new(children.iter().rev()),
                    };
                    for &c in iter {
                        value_offset[c] = acc;
                        acc += size[c];
                    }
                }
            }
        }
        Permutation::from_values_unchecked(values)
    }

    /// Separating tree by greedy merging of value-adjacent blocks on a stack.
    pub fn from_permutation(p: &Permutation) -> Result<Self, StructureError> {
        if p.is_empty() {
            return Err(StructureError::InvalidPermutation("empty permutation".into()));
        }
        struct Block {
            node: usize,
            lo: usize,
            hi: usize,
            start: usize,
        }
        let mut nodes: Vec<SchroderNode> = Vec::new();
        let mut stack: Vec<Block> = Vec::new();
        for (pos, &v) in p.values().iter().enumerate() {
            nodes.push(SchroderNode::Leaf);
            let mut cur = Block { node: nodes.len() - 1, lo: v, hi: v, start: pos };
            while let Some(top) = stack.last() {
                let sign = if top.hi + 1 == cur.lo {
                    Sign::Plus
                } else if cur.hi + 1 == top.lo {
                    Sign::Minus
                } else {
                    break;
                };
                let top = stack.pop().unwrap();
                let mut children = Vec::new();
                for part in [top.node, cur.node] {
                    match &nodes[part] {
                        SchroderNode::Internal { sign: s, children: cs } if *s == sign => {
                            children.extend_from_slice(cs)
                        }
                        _ => children.push(part),
                    }
                }
                nodes.push(SchroderNode::Internal { sign, children });
                cur = Block {
                    node: nodes.len() - 1,
                    lo: top.lo.min(cur.lo),
                    hi: top.hi.max(cur.hi),
                    start: top.start,
                };
            }
            stack.push(cur);
        }
        if stack.len() > 1 {
            let mut blocks = Vec::new();
            for (i, b) in stack.iter().enumerate() {
                let end = stack.get(i + 1).map_or(p.len(), |nb| nb.start);
                blocks.push((b.start, end - 1));
            }
            return Err(StructureError::NotSeparable { blocks });
        }
        Ok(preorder_layout(&nodes, stack[0].node))
    }
}

fn preorder_layout(nodes: &[SchroderNode], root: usize) -> SchroderTree {
    let mut count = vec![0usize; nodes.len()];
    let mut order = Vec::new();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        if let SchroderNode::Internal { children, .. } = &nodes[v] {
            stack.extend(children.iter());
        }
    }
    for &v in order.iter().rev() {
        count[v] = match &nodes[v] {
            SchroderNode::Leaf => 1,
            SchroderNode::Internal { children, .. } => 1 + children.iter().map(|&c| count[c]).sum::<usize>(),
        };
    }
    let mut out = vec![SchroderNode::Leaf; count[root]];
    let mut leaves = 0;
    let mut stack = vec![(root, 0usize)];
    while let Some((v, id)) = stack.pop() {
        match &nodes[v] {
            SchroderNode::Leaf => leaves += 1,
            SchroderNode::Internal { sign, children } => {
                let mut next = id + 1;
                let mut ids = Vec::with_capacity(children.len());
                for &c in children {
                    ids.push(next);
                    stack.push((c, next));
                    next += count[c];
                }
                out[id] = SchroderNode::Internal { sign: *sign, children: ids };
            }
        }
    }
    SchroderTree { nodes: out, n: leaves }
}

impl fmt::Display for SchroderTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        while let Some((v, i)) = stack.pop() {
            match &self.nodes[v] {
                SchroderNode::Leaf => write!(f, "L")?,
                SchroderNode::Internal { sign, children } => {
                    if i == 0 {
                        write!(f, "{}(", sign.symbol())?;
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
                }
            }
        }
        Ok(())
    }
}

impl FromStr for SchroderTree {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = compact(s);
        let b = s.as_bytes();
        let err = |pos: usize, m: &str| StructureError::Parse(format!("{m} at byte {pos}"));
        let mut nodes: Vec<SchroderNode> = Vec::new();
        let mut open: Vec<(Sign, Vec<usize>)> = Vec::new();
        let mut pos = 0;
        let root = 'outer: loop {
            let mut done = match (b.get(pos), b.get(pos + 1)) {
                (Some(b'L'), _) => {
                    pos += 1;
                    nodes.push(SchroderNode::Leaf);
                    nodes.len() - 1
                }
                (Some(c @ (b'+' | b'-')), Some(b'(')) => {
                    open.push((if *c == b'+' { Sign::Plus } else { Sign::Minus }, Vec::new()));
                    pos += 2;
                    continue;
                }
                _ => return Err(err(pos, "expected a leaf or a signed node")),
            };
            loop {
                let Some((_, kids)) = open.last_mut() else { break 'outer done };
                kids.push(done);
                match b.get(pos) {
                    Some(b',') => {
                        pos += 1;
                        break;
                    }
                    Some(b')') => {
                        pos += 1;
                        let (sign, children) = open.pop().unwrap();
                        nodes.push(SchroderNode::Internal { sign, children });
                        done = nodes.len() - 1;
                    }
                    _ => return Err(err(pos, "expected ',' or ')'")),
                }
            }
        };
        if pos != b.len() {
            return Err(err(pos, "trailing input"));
        }
        SchroderTree::from_nodes(nodes, root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SchroderTree {
        s.parse().unwrap()
    }

    #[test]
    fn small_permutations() {
        assert_eq!(t("+(-(L,L),L)").to_permutation().to_string(), "2,1,3");
        assert_eq!(t("-(L,+(L,L))").to_permutation().to_string(), "3,1,2");
        assert_eq!(t("L").to_permutation().to_string(), "1");
    }

    #[test]
    fn separating_tree_round_trip() {
        for s in ["+(L,-(L,L),L)", "-(+(L,L),L)", "+(-(L,+(L,L),L),L,-(L,L))", "L"] {
            let tree = t(s);
            let p = tree.to_permutation();
            assert_eq!(SchroderTree::from_permutation(&p).unwrap(), tree, "{s}");
            assert_eq!(tree.to_string(), s);
        }
    }

    #[test]
    fn rejects_2413_and_3142() {
        for v in [vec![2, 4, 1, 3], vec![3, 1, 4, 2], vec![1, 3, 5, 2, 4]] {
            let p = Permutation::new(v).unwrap();
            assert!(matches!(
                SchroderTree::from_permutation(&p),
                Err(StructureError::NotSeparable { .. })
            ));
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "+(L)", "+(L,+(L,L))", "*(L,L)", "+(L,L", "LL"] {
            assert!(bad.parse::<SchroderTree>().is_err(), "{bad}");
        }
    }

    #[test]
    fn swap_complements() {
        let tree = t("+(-(L,L),L,-(L,+(L,L)))");
        assert_eq!(tree.swapped().to_permutation(), tree.to_permutation().complement());
    }
}
