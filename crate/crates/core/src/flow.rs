//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), head: vec![Vec::new(); n] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        self.head[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.head[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn levels(&self, s: usize) -> Vec<i32> {
        let mut level = vec![-1; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &a in &self.head[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] < 0 {
                    level[arc.to] = level[x] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, s: usize, t: usize, level: &[i32], next: &mut [usize]) -> i64 {
        // iterative DFS along the level graph
        let mut total = 0;
        loop {
            let mut path: Vec<usize> = Vec::new();
            let mut x = s;
            loop {
                if x == t {
                    break;
                }
                let mut advanced = false;
                while next[x] < self.head[x].len() {
                    let a = self.head[x][next[x]];
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && level[arc.to] == level[x] + 1 {
                        path.push(a);
                        x = arc.to;
                        advanced = true;
                        break;
                    }
                    next[x] += 1;
                }
                if !advanced {
                    if x == s {
                        return total;
                    }
                    let a = path.pop().unwrap();
                    x = self.arcs[a ^ 1].to;
                    next[x] += 1;
                }
            }
            let f = path.iter().map(|&a| self.arcs[a].cap).min().unwrap();
            for &a in &path {
                self.arcs[a].cap -= f;
                self.arcs[a ^ 1].cap += f;
            }
            total += f;
        }
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return flow;
            }
            let mut next = vec![0; self.head.len()];
            flow += self.augment(s, t, &level, &mut next);
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l >= 0).collect()
    }

    /// Nodes that can reach `t` in the residual network.
    pub fn sink_reachers(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[t] = true;
        let mut q = VecDeque::from([t]);
        while let Some(x) = q.pop_front() {
            for &a in &self.head[x] {
                // arc a goes x -> y; its twin y -> x has residual cap arcs[a^1].cap
                let y = self.arcs[a].to;
                if !seen[y] && self.arcs[a ^ 1].cap > 0 {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_network() {
        let mut f = FlowNetwork::new(6);
        for &(a, b, c) in &[(0, 1, 16), (0, 2, 13), (1, 2, 10), (2, 1, 4), (1, 3, 12), (3, 2, 9), (2, 4, 14), (4, 3, 7), (3, 5, 20), (4, 5, 4)] {
            f.add_arc(a, b, c);
        }
        assert_eq!(f.max_flow(0, 5), 23);
        let side = f.source_side(0);
        assert!(side[0] && !side[5]);
    }
}
