use rustc_hash::FxHashMap;

use crate::dga::DGAlgebra;
use crate::exactla::Field;

use super::HochschildError;

/// Default cap on the number of enumerated bar words.
pub const DEFAULT_BUDGET: usize = 4_000_000;

/// A bar word `[a_1|…|a_t]`, letters given by their position in the list of
/// augmentation-ideal basis elements.
pub type Word = Box<[u8]>;

/// All reduced bar words up to a shifted degree, where a letter `a`
/// contributes `|a| - 1`. Words of each shifted degree are listed
/// lexicographically in letter order.
#[derive(Clone, Debug)]
pub struct WordTable {
    letters: Vec<usize>,
    letter_names: Vec<String>,
    shift: Vec<u32>,
    by_degree: Vec<Vec<Word>>,
    index: FxHashMap<Word, u32>,
}

impl WordTable {
    /// Words of shifted degree at most `max_shift`. Fails before allocating
    /// when more than `budget` words would be produced.
    pub fn new<F: Field>(a: &DGAlgebra<F>, max_shift: i64, budget: usize) -> Result<Self, HochschildError> {
        let letters: Vec<usize> = (1..a.dim()).collect();
        if letters.len() > u8::MAX as usize {
            return Err(HochschildError::TooManyLetters(letters.len()));
        }
        let shift: Vec<u32> = letters
            .iter()
            .map(|&i| {
                let d = a.degree(i);
                if d < 2 {
                    Err(HochschildError::NotStrict(a.name(i).to_string()))
                } else {
                    Ok((d - 1) as u32)
                }
            })
            .collect::<Result<_, _>>()?;
        let max = max_shift.max(0) as usize;
        let mut counts = vec![0usize; max + 1];
        counts[0] = 1;
        for s in 1..=max {
            counts[s] = shift.iter().filter(|&&l| l as usize <= s).map(|&l| counts[s - l as usize]).sum::<usize>();
            if counts.iter().sum::<usize>() > budget {
                return Err(HochschildError::Budget { words: counts.iter().sum(), budget });
            }
        }
        let mut by_degree: Vec<Vec<Word>> = Vec::with_capacity(max + 1);
        by_degree.push(vec![Vec::new().into_boxed_slice()]);
        for s in 1..=max {
            let mut ws = Vec::with_capacity(counts[s]);
            for (l, &sh) in shift.iter().enumerate() {
                let sh = sh as usize;
                if sh > s {
                    continue;
                }
                for tail in &by_degree[s - sh] {
                    let mut w = Vec::with_capacity(tail.len() + 1);
                    w.push(l as u8);
                    w.extend_from_slice(tail);
                    ws.push(w.into_boxed_slice());
                }
            }
            by_degree.push(ws);
        }
        let mut index = FxHashMap::default();
        index.reserve(counts.iter().sum());
        for ws in &by_degree {
            for (k, w) in ws.iter().enumerate() {
                index.insert(w.clone(), k as u32);
            }
        }
        let letter_names = letters.iter().map(|&i| a.name(i).to_string()).collect();
        Ok(WordTable { letters, letter_names, shift, by_degree, index })
    }

    pub fn max_shift(&self) -> i64 {
        self.by_degree.len() as i64 - 1
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// Algebra index of letter `l`.
    pub fn letter(&self, l: u8) -> usize {
        self.letters[l as usize]
    }

    pub fn shift(&self, l: u8) -> u32 {
        self.shift[l as usize]
    }

    pub fn degree_of(&self, w: &[u8]) -> i64 {
        w.iter().map(|&l| self.shift[l as usize] as i64).sum()
    }

    pub fn words(&self, s: i64) -> &[Word] {
        if s < 0 || s > self.max_shift() {
            return &[];
        }
        &self.by_degree[s as usize]
    }

    pub fn count(&self, s: i64) -> usize {
        self.words(s).len()
    }

    pub fn total(&self) -> usize {
        self.index.len()
    }

    /// Position of `w` within the words of its shifted degree.
    pub fn position(&self, w: &[u8]) -> Option<u32> {
        self.index.get(w).copied()
    }

    /// Letter of the augmentation ideal with algebra index `i`.
    pub fn letter_of(&self, i: usize) -> Option<u8> {
        self.letters.iter().position(|&x| x == i).map(|l| l as u8)
    }

    pub fn format(&self, w: &[u8]) -> String {
        let parts: Vec<&str> = w.iter().map(|&l| self.letter_names[l as usize].as_str()).collect();
        format!("[{}]", parts.join("|"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::RationalField;

    fn alg(basis: &[(&str, i64)]) -> DGAlgebra<RationalField> {
        let b: Vec<(String, i64)> = basis.iter().map(|(n, d)| (n.to_string(), *d)).collect();
        DGAlgebra::new(&RationalField, &b, &[], &[]).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let k = alg(&[("1", 0)]);
        let t = WordTable::new(&k, 10, 100).unwrap();
        assert_eq!(t.total(), 1);

        let e1 = alg(&[("1", 0), ("x", 3)]);
        let t = WordTable::new(&e1, 5, 100).unwrap();
        let all: Vec<String> = (0..=5).flat_map(|s| t.words(s).iter().map(|w| t.format(w))).collect();
        assert_eq!(all, vec!["[]", "[x]", "[x|x]"]);

        // letters x(2), z(3), x^2(4), xz(5): shifted degrees 1, 2, 3, 4
        let e3 = alg(&[("1", 0), ("x", 2), ("z", 3), ("x^2", 4), ("xz", 5)]);
        let t = WordTable::new(&e3, 6, 1000).unwrap();
        let internal_four: Vec<String> = (0..=6)
            .flat_map(|s| t.words(s).iter())
            .filter(|w| w.iter().map(|&l| e3.degree(t.letter(l))).sum::<i64>() == 4)
            .map(|w| t.format(w))
            .collect();
        assert_eq!(internal_four, vec!["[x|x]", "[x^2]"]);
        assert_eq!(t.words(3).iter().map(|w| t.format(w)).collect::<Vec<_>>(), vec!["[x|x|x]", "[x|z]", "[z|x]", "[x^2]"]);
        assert!(matches!(WordTable::new(&e3, 30, 1000), Err(HochschildError::Budget { .. })));
    }
}
