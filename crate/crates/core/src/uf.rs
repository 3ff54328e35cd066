/// Disjoint sets over `0..len` with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
    }

    /// Component labels numbered by first appearance, i.e. by least member.
    pub(crate) fn labels(&mut self) -> (Vec<u32>, usize) {
        let len = self.parent.len();
        let mut id = vec![u32::MAX; len];
        let mut out = vec![0u32; len];
        let mut count = 0u32;
        for x in 0..len {
            let r = self.find(x);
            if id[r] == u32::MAX {
                id[r] = count;
                count += 1;
            }
            out[x] = id[r];
        }
        (out, count as usize)
    }
}
