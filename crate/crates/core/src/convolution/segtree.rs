/// Lazy segment tree over `u64` supporting range chmin and range min.
pub struct ChminTree {
    n: usize,
    min: Vec<u64>,
    tag: Vec<u64>,
}

impl ChminTree {
    pub fn new(n: usize, init: u64) -> Self {
        let size = n.max(1).next_power_of_two();
        ChminTree { n, min: vec![init; 2 * size], tag: vec![u64::MAX; 2 * size] }
    }

    fn size(&self) -> usize {
        self.min.len() / 2
    }

    fn apply(&mut self, node: usize, v: u64) {
        self.min[node] = self.min[node].min(v);
        self.tag[node] = self.tag[node].min(v);
    }

    fn push(&mut self, node: usize) {
        let t = self.tag[node];
        if t != u64::MAX {
            self.apply(2 * node, t);
            self.apply(2 * node + 1, t);
            self.tag[node] = u64::MAX;
        }
    }

    /// `a[i] = min(a[i], v)` for `i ∈ [l, r]`.
    pub fn chmin(&mut self, l: usize, r: usize, v: u64) {
        if l <= r {
            let size = self.size();
            self.update(1, 0, size - 1, l, r.min(self.n - 1), v);
        }
    }

    fn update(&mut self, node: usize, nl: usize, nr: usize, l: usize, r: usize, v: u64) {
        if r < nl || nr < l {
            return;
        }
        if l <= nl && nr <= r {
            self.apply(node, v);
            return;
        }
        self.push(node);
        let mid = (nl + nr) / 2;
        self.update(2 * node, nl, mid, l, r, v);
        self.update(2 * node + 1, mid + 1, nr, l, r, v);
        self.min[node] = self.min[2 * node].min(self.min[2 * node + 1]);
    }

    /// Minimum over `[l, r]`.
    pub fn query(&mut self, l: usize, r: usize) -> u64 {
        let size = self.size();
        self.query_rec(1, 0, size - 1, l, r)
    }

    fn query_rec(&mut self, node: usize, nl: usize, nr: usize, l: usize, r: usize) -> u64 {
        if r < nl || nr < l {
            return u64::MAX;
        }
        if l <= nl && nr <= r {
            return self.min[node];
        }
        self.push(node);
        let mid = (nl + nr) / 2;
        self.query_rec(2 * node, nl, mid, l, r).min(self.query_rec(2 * node + 1, mid + 1, nr, l, r))
    }

    /// Pushes every tag down and returns the leaves.
    pub fn into_values(mut self) -> Vec<u64> {
        let size = self.size();
        for node in 1..size {
            self.push(node);
        }
        self.min[size..size + self.n].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_array(n in 1usize..40, ops in prop::collection::vec((0usize..40, 0usize..40, 0u64..100, any::<bool>()), 0..60)) {
            let mut t = ChminTree::new(n, 1000);
            let mut arr = vec![1000u64; n];
            for (a, b, v, is_query) in ops {
                let (l, r) = (a.min(b) % n, a.max(b) % n);
                let (l, r) = (l.min(r), l.max(r));
                if is_query {
                    prop_assert_eq!(t.query(l, r), *arr[l..=r].iter().min().unwrap());
                } else {
                    t.chmin(l, r, v);
                    for x in &mut arr[l..=r] {
                        *x = (*x).min(v);
                    }
                }
            }
            prop_assert_eq!(t.into_values(), arr);
        }
    }
}
