use std::collections::HashMap;

pub type Color = u32;

/// Color histogram sorted by color id: `(color, count)`.
pub type Histogram = Vec<(Color, usize)>;

/// Exact injective HASH: canonical signatures map to dense ids in
/// first-seen order.
#[derive(Debug, Default, Clone)]
pub struct SignatureInterner {
    table: HashMap<Vec<u32>, Color>,
}

impl SignatureInterner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, signature: Vec<u32>) -> Color {
        let next = self.table.len() as Color;
        *self.table.entry(signature).or_insert(next)
    }

    pub fn get(&self, signature: &[u32]) -> Option<Color> {
        self.table.get(signature).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Dense coloring of a set of entities (nodes or k-tuples).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Color>,
    num_classes: usize,
    histogram: Histogram,
}

impl Coloring {
    /// Wraps colors that are already dense in `0..num_classes`.
    ///
    /// Panics if some id in that range is unused.
    pub fn from_dense(colors: Vec<Color>) -> Self {
        let num_classes = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let histogram = histogram_of(&colors);
        assert_eq!(histogram.len(), num_classes, "color ids are not dense");
        Coloring {
            colors,
            num_classes,
            histogram,
        }
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn histogram(&self) -> &Histogram {
        &self.histogram
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// True if both colorings induce the same partition of the entities,
    /// regardless of the ids used.
    pub fn same_partition(&self, other: &Coloring) -> bool {
        self.num_classes == other.num_classes && self.refines(other) && other.refines(self)
    }

    /// True if every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &Coloring) -> bool {
        if self.colors.len() != coarser.colors.len() {
            return false;
        }
        let mut parent: Vec<Option<Color>> = vec![None; self.num_classes];
        for (&fine, &coarse) in self.colors.iter().zip(&coarser.colors) {
            match parent[fine as usize] {
                None => parent[fine as usize] = Some(coarse),
                Some(p) if p != coarse => return false,
                Some(_) => {}
            }
        }
        true
    }
}

pub fn histogram_of(colors: &[Color]) -> Histogram {
    let mut counts: Vec<usize> = Vec::new();
    for &c in colors {
        let c = c as usize;
        if c >= counts.len() {
            counts.resize(c + 1, 0);
        }
        counts[c] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, n)| n > 0)
        .map(|(c, n)| (c as Color, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interner_is_injective_and_dense() {
        let mut it = SignatureInterner::new();
        assert_eq!(it.intern(vec![3, 1]), 0);
        assert_eq!(it.intern(vec![1, 3]), 1);
        assert_eq!(it.intern(vec![3, 1]), 0);
        assert_eq!(it.intern(vec![]), 2);
        assert_eq!(it.get(&[1, 3]), Some(1));
        assert_eq!(it.len(), 3);
    }

    #[test]
    fn partitions_compare_up_to_renaming() {
        let a = Coloring::from_dense(vec![0, 0, 1, 2]);
        let b = Coloring::from_dense(vec![2, 2, 0, 1]);
        let c = Coloring::from_dense(vec![0, 0, 0, 1]);
        assert!(a.same_partition(&b));
        assert!(a.refines(&c) && !c.refines(&a));
        assert!(!a.same_partition(&c));
        assert_eq!(a.histogram(), &vec![(0, 2), (1, 1), (2, 1)]);
    }

    #[test]
    #[should_panic]
    fn sparse_ids_rejected() {
        Coloring::from_dense(vec![0, 2]);
    }
}
