use std::fmt;

use serde::{Deserialize, Serialize};

/// `h[i][j] = h^j(Omega^i)` for a smooth proper variety of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    pub dim: usize,
    pub h: Vec<Vec<u128>>,
}

impl HodgeDiamond {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> u128) -> Self {
        HodgeDiamond {
            dim,
            h: (0..=dim).map(|i| (0..=dim).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u128 {
        self.h[i][j]
    }

    /// `h^{i,j} = h^{d-i,d-j}`.
    pub fn is_serre_symmetric(&self) -> bool {
        let d = self.dim;
        (0..=d).all(|i| (0..=d).all(|j| self.h[i][j] == self.h[d - i][d - j]))
    }

    pub fn is_hodge_symmetric(&self) -> bool {
        let d = self.dim;
        (0..=d).all(|i| (0..=d).all(|j| self.h[i][j] == self.h[j][i]))
    }

    /// `sum (-1)^{i+j} h^{i,j}`.
    pub fn topological_euler(&self) -> i128 {
        let mut s = 0i128;
        for (i, row) in self.h.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                s += sign * x as i128;
            }
        }
        s
    }

    /// Row `k` of the printed diamond: the entries with `i + j = k`, read
    /// with `i` decreasing from left to right.
    pub fn row(&self, k: usize) -> Vec<u128> {
        let d = self.dim;
        let lo = k.saturating_sub(d);
        let hi = k.min(d);
        (lo..=hi).rev().map(|i| self.h[i][k - i]).collect()
    }

    pub fn to_markdown(&self) -> String {
        format!("```\n{self}```\n")
    }
}

impl fmt::Display for HodgeDiamond {
    /// Centered triangular layout, `h^{0,0}` on top.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim;
        let width = self
            .h
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1)
            .max(1);
        for k in 0..=2 * d {
            let row = self.row(k);
            let indent = (d + 1 - row.len()) * (width + 1);
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            let line = format!("{}{}", " ".repeat(indent), cells.join(&" ".repeat(width + 2)));
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}
