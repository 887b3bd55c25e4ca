use std::fmt;

/// A basis blade `e_{i1} e_{i2} ⋯ e_{ik}` with `i1 < i2 < ⋯ < ik`, stored as
/// the bit set of its indices. The empty set is the scalar blade `1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn vector(i: usize) -> Self {
        Blade(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.0 & (1 << i) != 0)
    }

    pub fn without(self, i: usize) -> Self {
        Blade(self.0 & !(1 << i))
    }

    /// Whether reordering `self · other` into ascending order takes an odd
    /// number of transpositions.
    pub fn reorder_is_odd(self, other: Blade) -> bool {
        let mut a = self.0 >> 1;
        let mut swaps = 0;
        while a != 0 {
            swaps += (a & other.0).count_ones();
            a >>= 1;
        }
        swaps & 1 == 1
    }

    /// Canonical name: `1`, `e0`, `e013`; indices above 9 switch to the
    /// underscore form `e1_11`, or `e_11` for a lone index.
    pub fn name(self) -> String {
        if self.0 == 0 {
            return "1".into();
        }
        let idx: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        if idx.len() == 1 && self.0 >= 1 << 10 {
            format!("e_{}", idx[0])
        } else if self.indices().any(|i| i > 9) {
            format!("e{}", idx.join("_"))
        } else {
            format!("e{}", idx.concat())
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(Blade::SCALAR.name(), "1");
        assert_eq!(Blade::from_indices(&[0, 2, 3]).name(), "e023");
        assert_eq!(Blade::from_indices(&[1, 11]).name(), "e1_11");
    }

    #[test]
    fn reorder_parity() {
        // e2 e1 -> -e1 e2
        assert!(Blade::vector(2).reorder_is_odd(Blade::vector(1)));
        assert!(!Blade::vector(1).reorder_is_odd(Blade::vector(2)));
        // e12 e0 -> e0 e12 needs two swaps
        assert!(!Blade::from_indices(&[1, 2]).reorder_is_odd(Blade::vector(0)));
        // e123 e0 needs three
        assert!(Blade::from_indices(&[1, 2, 3]).reorder_is_odd(Blade::vector(0)));
    }
}
