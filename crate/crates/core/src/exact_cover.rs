//! Dancing-links exact cover over a fixed set of primary items.

/// Toroidal doubly linked sparse matrix. Node 0 is the root header, nodes
/// `1..=items` are item headers, the rest are option nodes.
#[derive(Debug, Clone)]
pub struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    item: Vec<usize>,
    option_of: Vec<usize>,
    len: Vec<usize>,
}

impl ExactCover {
    /// `options[r]` lists the items (in `0..items`) covered by option `r`.
    pub fn new(items: usize, options: &[Vec<usize>]) -> Self {
        let headers = items + 1;
        let mut dl = ExactCover {
            left: (0..headers).map(|i| if i == 0 { items } else { i - 1 }).collect(),
            right: (0..headers).map(|i| if i == items { 0 } else { i + 1 }).collect(),
            up: (0..headers).collect(),
            down: (0..headers).collect(),
            item: (0..headers).collect(),
            option_of: vec![usize::MAX; headers],
            len: vec![0; headers],
        };
        for (r, opt) in options.iter().enumerate() {
            let first = dl.left.len();
            for (k, &it) in opt.iter().enumerate() {
                assert!(it < items, "item {it} out of range");
                let head = it + 1;
                let node = dl.left.len();
                let prev = if k == 0 { node } else { node - 1 };
                dl.left.push(prev);
                dl.right.push(first);
                dl.right[prev] = node;
                dl.left[first] = node;
                dl.up.push(dl.up[head]);
                dl.down.push(head);
                let last = dl.up[head];
                dl.down[last] = node;
                dl.up[head] = node;
                dl.item.push(head);
                dl.option_of.push(r);
                dl.len[head] += 1;
            }
        }
        dl
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.len[self.item[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                self.len[self.item[j]] += 1;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Counts exact covers, stopping once `limit` is reached. `visit` receives
    /// the option indices of every cover found.
    pub fn solve(&mut self, limit: Option<usize>, mut visit: impl FnMut(&[usize])) -> usize {
        let mut count = 0;
        let mut chosen = Vec::new();
        self.search(limit, &mut count, &mut chosen, &mut visit);
        count
    }

    pub fn count(&mut self, limit: Option<usize>) -> usize {
        self.solve(limit, |_| {})
    }

    fn search(
        &mut self,
        limit: Option<usize>,
        count: &mut usize,
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) -> bool {
        if self.right[0] == 0 {
            *count += 1;
            visit(chosen);
            return limit.is_some_and(|l| *count >= l);
        }
        // Minimum remaining values.
        let mut c = self.right[0];
        let mut best = self.len[c];
        let mut j = self.right[c];
        while j != 0 {
            if self.len[j] < best {
                best = self.len[j];
                c = j;
            }
            j = self.right[j];
        }
        if best == 0 {
            return false;
        }
        self.cover(c);
        let mut r = self.down[c];
        let mut stop = false;
        while r != c && !stop {
            chosen.push(self.option_of[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.item[j]);
                j = self.right[j];
            }
            stop = self.search(limit, count, chosen, visit);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.item[j]);
                j = self.left[j];
            }
            chosen.pop();
            r = self.down[r];
        }
        self.uncover(c);
        stop
    }
}
