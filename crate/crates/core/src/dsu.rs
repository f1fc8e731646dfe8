/// Disjoint sets over `0..len` with union by size and path halving.
///
/// Elements can be re-initialised individually with [`DisjointSets::make_set`],
/// which lets the segment scans reuse one forest for every start rank.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    #[inline]
    pub fn make_set(&mut self, i: usize) {
        self.parent[i] = i as u32;
        self.size[i] = 1;
    }

    #[inline]
    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] as usize != i {
            let grand = self.parent[self.parent[i] as usize];
            self.parent[i] = grand;
            i = grand as usize;
        }
        i
    }

    /// Merges the sets of `a` and `b`; returns false if they already were one.
    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_finds() {
        let mut s = DisjointSets::new(6);
        assert!(s.union(0, 1));
        assert!(s.union(2, 3));
        assert!(!s.union(1, 0));
        assert!(s.union(1, 3));
        assert_eq!(s.find(0), s.find(2));
        assert_ne!(s.find(0), s.find(4));
        s.make_set(4);
        assert_eq!(s.find(4), 4);
    }
}
