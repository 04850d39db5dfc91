use crate::dictionary::{Dictionary, WordId};
use crate::distance::full_edit_distance_chars;
use crate::error::{Error, Result};
use crate::index::Match;

#[derive(Debug, Clone)]
struct Node {
    word: WordId,
    /// (distance to this node's word, child node index)
    children: Vec<(usize, usize)>,
}

/// Burkhard-Keller tree with one word per node, built in dictionary order.
#[derive(Debug, Clone)]
pub struct BkTree<'a> {
    dict: &'a Dictionary,
    nodes: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BkQueryResult {
    pub matches: Vec<Match>,
    pub distance_computations: usize,
}

impl<'a> BkTree<'a> {
    pub fn build(dict: &'a Dictionary) -> Result<Self> {
        if dict.is_empty() {
            return Err(Error::usage(
                "cannot build a BK-tree over an empty dictionary",
            ));
        }
        let mut nodes = Vec::with_capacity(dict.len());
        nodes.push(Node {
            word: WordId(0),
            children: Vec::new(),
        });
        for (id, _) in dict.iter().skip(1) {
            let w = dict.chars(id);
            let mut at = 0;
            loop {
                let dist = full_edit_distance_chars(dict.chars(nodes[at].word), w);
                match nodes[at].children.iter().find(|&&(k, _)| k == dist) {
                    Some(&(_, child)) => at = child,
                    None => {
                        let child = nodes.len();
                        nodes[at].children.push((dist, child));
                        nodes.push(Node {
                            word: id,
                            children: Vec::new(),
                        });
                        break;
                    }
                }
            }
        }
        Ok(BkTree { dict, nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> WordId {
        self.nodes[0].word
    }

    /// Every (parent, child, edge label) triple.
    pub fn edges(&self) -> impl Iterator<Item = (WordId, WordId, usize)> + '_ {
        self.nodes.iter().flat_map(move |n| {
            n.children
                .iter()
                .map(move |&(k, c)| (n.word, self.nodes[c].word, k))
        })
    }

    /// Visits only children whose edge label lies in `[v - d, v + d]`, where
    /// `v` is the distance from the query to the current node.
    pub fn query(&self, q: &str, d: usize) -> BkQueryResult {
        let q: Vec<char> = q.chars().collect();
        let mut matches = Vec::new();
        let mut computations = 0;
        let mut stack = vec![0];
        while let Some(at) = stack.pop() {
            let node = &self.nodes[at];
            let v = full_edit_distance_chars(self.dict.chars(node.word), &q);
            computations += 1;
            if v <= d {
                matches.push(Match {
                    distance: v,
                    word_id: node.word,
                });
            }
            let lo = v.saturating_sub(d);
            let hi = v + d;
            stack.extend(
                node.children
                    .iter()
                    .filter(|&&(k, _)| k >= lo && k <= hi)
                    .map(|&(_, c)| c),
            );
        }
        matches.sort_unstable();
        BkQueryResult {
            matches,
            distance_computations: computations,
        }
    }
}
