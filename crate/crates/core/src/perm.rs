//! Permutations, parity and unshuffles.

/// A permutation of `0..n` stored as its image list, `sigma[i] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// +1 for even permutations, −1 for odd ones.
    pub fn sign(&self) -> i64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Perm(inv)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if current.len() == n {
            out.push(Perm(current.clone()));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// An (i, j)-unshuffle: `sigma(0) < … < sigma(i-1)` and `sigma(i) < … < sigma(i+j-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unshuffle {
    pub sigma: Perm,
    pub split: usize,
    pub sign: i64,
}

impl Unshuffle {
    pub fn head(&self) -> &[usize] {
        &self.sigma.0[..self.split]
    }

    pub fn tail(&self) -> &[usize] {
        &self.sigma.0[self.split..]
    }
}

/// All (i, j)-unshuffles of `0..i+j`, ordered lexicographically by their head.
pub fn unshuffles(i: usize, j: usize) -> Vec<Unshuffle> {
    let n = i + j;
    let mut out = Vec::new();
    let mut head = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, i: usize, head: &mut Vec<usize>, out: &mut Vec<Unshuffle>) {
        if head.len() == i {
            let mut sigma = head.clone();
            sigma.extend((0..n).filter(|x| !head.contains(x)));
            let perm = Perm(sigma);
            let sign = perm.sign();
            out.push(Unshuffle {
                sigma: perm,
                split: i,
                sign,
            });
            return;
        }
        for x in start..n {
            head.push(x);
            rec(x + 1, n, i, head, out);
            head.pop();
        }
    }
    rec(0, n, i, &mut head, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unshuffles_of_a_pair() {
        let u = unshuffles(1, 1);
        assert_eq!(u.len(), 2);
        assert_eq!((u[0].sigma.0.clone(), u[0].sign), (vec![0, 1], 1));
        assert_eq!((u[1].sigma.0.clone(), u[1].sign), (vec![1, 0], -1));
    }

    #[test]
    fn unshuffles_match_filtered_permutations() {
        for (i, j) in [(2, 1), (1, 2), (2, 2), (3, 1), (2, 3)] {
            let n = i + j;
            let brute: Vec<Perm> = permutations(n)
                .into_iter()
                .filter(|p| {
                    p.0[..i].windows(2).all(|w| w[0] < w[1])
                        && p.0[i..].windows(2).all(|w| w[0] < w[1])
                })
                .collect();
            let fast: Vec<Perm> = unshuffles(i, j).into_iter().map(|u| u.sigma).collect();
            assert_eq!(brute, fast, "({i},{j})");
        }
        assert_eq!(unshuffles(2, 1).len(), 3);
    }

    #[test]
    fn degenerate_splits_are_the_identity() {
        for (i, j) in [(0, 3), (3, 0)] {
            let u = unshuffles(i, j);
            assert_eq!(u.len(), 1);
            assert_eq!(u[0].sigma, Perm::identity(3));
            assert_eq!(u[0].sign, 1);
        }
    }

    #[test]
    fn counts_are_binomial() {
        for n in 0..=7 {
            for i in 0..=n {
                assert_eq!(unshuffles(i, n - i).len(), binomial(n, i));
            }
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        let ps = permutations(4);
        for p in &ps {
            for q in &ps {
                let comp = Perm(q.0.iter().map(|&x| p.0[x]).collect());
                assert_eq!(comp.sign(), p.sign() * q.sign());
            }
        }
    }
}
