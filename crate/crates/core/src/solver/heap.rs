//! Addressable binary min-heap over dense ids `0..n`. The ordering lives
//! outside the heap and is passed to every operation, so a caller can lower
//! an id's key and then restore the heap with [`IndexedHeap::decrease`].

const ABSENT: usize = usize::MAX;

#[derive(Debug, Clone)]
pub(crate) struct IndexedHeap {
    heap: Vec<usize>,
    pos: Vec<usize>,
}

impl IndexedHeap {
    pub fn new(n: usize) -> Self {
        IndexedHeap {
            heap: Vec::new(),
            pos: vec![ABSENT; n],
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.pos[id] != ABSENT
    }

    pub fn peek(&self) -> Option<usize> {
        self.heap.first().copied()
    }

    pub fn items(&self) -> &[usize] {
        &self.heap
    }

    pub fn push(&mut self, id: usize, less: impl Fn(usize, usize) -> bool) {
        debug_assert!(!self.contains(id));
        self.pos[id] = self.heap.len();
        self.heap.push(id);
        self.sift_up(self.heap.len() - 1, &less);
    }

    /// Restores the heap after `id`'s key went down.
    pub fn decrease(&mut self, id: usize, less: impl Fn(usize, usize) -> bool) {
        let i = self.pos[id];
        debug_assert!(i != ABSENT);
        self.sift_up(i, &less);
    }

    pub fn pop(&mut self, less: impl Fn(usize, usize) -> bool) -> Option<usize> {
        let last = self.heap.len().checked_sub(1)?;
        self.swap(0, last);
        let top = self.heap.pop()?;
        self.pos[top] = ABSENT;
        if !self.heap.is_empty() {
            self.sift_down(0, &less);
        }
        Some(top)
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i]] = i;
        self.pos[self.heap[j]] = j;
    }

    fn sift_up(&mut self, mut i: usize, less: &impl Fn(usize, usize) -> bool) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !less(self.heap[i], self.heap[parent]) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize, less: &impl Fn(usize, usize) -> bool) {
        let n = self.heap.len();
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut m = i;
            if l < n && less(self.heap[l], self.heap[m]) {
                m = l;
            }
            if r < n && less(self.heap[r], self.heap[m]) {
                m = r;
            }
            if m == i {
                break;
            }
            self.swap(i, m);
            i = m;
        }
    }
}
