//! Small union-find helpers shared by the topology and spanning modules.

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false if x and y were already in the same set.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx] = ry;
        true
    }

    pub fn component_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}

/// Union-find with a parity bit per element, for two-colourability style
/// constraints: `union(x, y, d)` asserts parity(x) xor parity(y) = d.
pub(crate) struct ParityDsu {
    parent: Vec<usize>,
    /// Parity of the element relative to its stored parent.
    offset: Vec<bool>,
}

impl ParityDsu {
    pub fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            offset: vec![false; n],
        }
    }

    /// Root of x together with the parity of x relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, parent_parity) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.offset[x] ^= parent_parity;
        (root, self.offset[x])
    }

    /// Merge with constraint parity(x) xor parity(y) = d.
    /// Returns false if the constraint contradicts an existing one.
    pub fn union(&mut self, x: usize, y: usize, d: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return (px ^ py) == d;
        }
        self.parent[rx] = ry;
        self.offset[rx] = px ^ py ^ d;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_contradiction() {
        let mut d = ParityDsu::new(3);
        assert!(d.union(0, 1, true));
        assert!(d.union(1, 2, true));
        assert!(d.union(0, 2, false));
        assert!(!d.union(0, 2, true));
    }
}
