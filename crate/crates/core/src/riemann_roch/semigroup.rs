use crate::curve::SuzukiParams;

/// The Weierstrass semigroup at P∞, ⟨q, q+q0, q+2q0, q+2q0+1⟩, tabulated up to a bound.
#[derive(Debug, Clone)]
pub struct Semigroup {
    generators: [u64; 4],
    member: Vec<bool>,
    gaps: Vec<u64>,
}

impl Semigroup {
    /// Membership for every n <= `bound` by dynamic programming over the generators.
    /// Gaps are only complete when `bound >= 2g`.
    pub fn build(params: &SuzukiParams, bound: u64) -> Self {
        let generators = params.gens;
        let len = bound as usize + 1;
        let mut member = vec![false; len];
        member[0] = true;
        for n in 1..len {
            member[n] = generators
                .iter()
                .any(|&s| s as usize <= n && member[n - s as usize]);
        }
        let gaps = (0..len).filter(|&n| !member[n]).map(|n| n as u64).collect();
        Semigroup {
            generators,
            member,
            gaps,
        }
    }

    pub fn generators(&self) -> [u64; 4] {
        self.generators
    }

    pub fn bound(&self) -> u64 {
        self.member.len() as u64 - 1
    }

    /// Panics if `n` exceeds the bound.
    pub fn contains(&self, n: u64) -> bool {
        self.member[n as usize]
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn largest_gap(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    /// #{n ∈ P : n <= j}, the dimension of L(j P∞).
    pub fn count_up_to(&self, j: u64) -> u64 {
        let j = j.min(self.bound());
        self.member[..=j as usize].iter().filter(|&&b| b).count() as u64
    }
}
