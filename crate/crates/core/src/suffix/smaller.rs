const NONE: u32 = u32::MAX;

/// Previous- and next-smaller-value answers for every position of an array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallerValues {
    prev: Vec<u32>,
    next: Vec<u32>,
}

impl SmallerValues {
    pub fn new(data: &[u32]) -> Self {
        let n = data.len();
        let mut prev = vec![NONE; n];
        let mut next = vec![NONE; n];
        let mut stack: Vec<usize> = Vec::new();
        for i in 0..n {
            while stack.last().is_some_and(|&j| data[j] >= data[i]) {
                stack.pop();
            }
            if let Some(&j) = stack.last() {
                prev[i] = j as u32;
            }
            stack.push(i);
        }
        stack.clear();
        for i in (0..n).rev() {
            while stack.last().is_some_and(|&j| data[j] >= data[i]) {
                stack.pop();
            }
            if let Some(&j) = stack.last() {
                next[i] = j as u32;
            }
            stack.push(i);
        }
        Self { prev, next }
    }

    /// Greatest `j < i` with `data[j] < data[i]`.
    pub fn psv(&self, i: usize) -> Option<usize> {
        match self.prev[i] {
            NONE => None,
            j => Some(j as usize),
        }
    }

    /// Least `j > i` with `data[j] < data[i]`.
    pub fn nsv(&self, i: usize) -> Option<usize> {
        match self.next[i] {
            NONE => None,
            j => Some(j as usize),
        }
    }
}
