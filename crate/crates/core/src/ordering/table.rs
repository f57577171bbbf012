use std::collections::HashMap;

use crate::vertex_set::VertexSet;

const UNSET: u8 = u8::MAX;
const NO_ARG: u8 = u8::MAX;

/// Widths of subsets of a fixed ground set, with an optional argmin per entry.
///
/// Full tables are stored densely, indexed by the packed code of the subset
/// within `scope`; partial tables (for instance all subsets up to some size)
/// are stored in a hash map.
#[derive(Clone, Debug)]
pub struct WidthTable {
    scope: VertexSet,
    filled: usize,
    storage: Storage,
}

#[derive(Clone, Debug)]
enum Storage {
    Dense { values: Vec<u8>, args: Vec<u8> },
    Sparse(HashMap<VertexSet, (u8, u8)>),
}

impl WidthTable {
    /// Room for every subset of `scope`.
    pub fn dense(scope: VertexSet) -> Self {
        let size = 1usize << scope.len();
        WidthTable {
            scope,
            filled: 0,
            storage: Storage::Dense {
                values: vec![UNSET; size],
                args: vec![NO_ARG; size],
            },
        }
    }

    pub fn sparse(scope: VertexSet) -> Self {
        WidthTable {
            scope,
            filled: 0,
            storage: Storage::Sparse(HashMap::new()),
        }
    }

    pub fn scope(&self) -> VertexSet {
        self.scope
    }

    /// Number of stored entries.
    pub fn len(&self) -> usize {
        self.filled
    }

    pub fn is_empty(&self) -> bool {
        self.filled == 0
    }

    pub fn get(&self, s: VertexSet) -> Option<u8> {
        self.entry(s).map(|(v, _)| v)
    }

    pub fn argmin(&self, s: VertexSet) -> Option<usize> {
        self.entry(s).and_then(|(_, a)| (a != NO_ARG).then_some(a as usize))
    }

    fn entry(&self, s: VertexSet) -> Option<(u8, u8)> {
        if !s.is_subset(self.scope) {
            return None;
        }
        match &self.storage {
            Storage::Dense { values, args } => {
                let code = self.scope.extract(s) as usize;
                (values[code] != UNSET).then(|| (values[code], args[code]))
            }
            Storage::Sparse(map) => map.get(&s).copied(),
        }
    }

    /// Stores `value` for `s`. Panics if `s` is outside the scope.
    pub fn set(&mut self, s: VertexSet, value: u8, arg: Option<usize>) {
        assert!(s.is_subset(self.scope), "{s:?} outside table scope {:?}", self.scope);
        let arg = arg.map_or(NO_ARG, |a| a as u8);
        match &mut self.storage {
            Storage::Dense { .. } => {
                let code = self.scope.extract(s) as usize;
                self.set_code(code, value, arg);
            }
            Storage::Sparse(map) => {
                if map.insert(s, (value, arg)).is_none() {
                    self.filled += 1;
                }
            }
        }
    }

    /// Dense write by packed code; `arg` is a raw vertex index or `u8::MAX`.
    #[inline]
    pub(crate) fn set_code(&mut self, code: usize, value: u8, arg: u8) {
        debug_assert!(value != UNSET);
        if let Storage::Dense { values, args } = &mut self.storage {
            if values[code] == UNSET {
                self.filled += 1;
            }
            values[code] = value;
            args[code] = arg;
        } else {
            panic!("set_code on a sparse table");
        }
    }

    /// Dense read by packed code; `u8::MAX` when unset.
    #[inline]
    pub(crate) fn value_at_code(&self, code: usize) -> u8 {
        match &self.storage {
            Storage::Dense { values, .. } => values[code],
            Storage::Sparse(_) => panic!("value_at_code on a sparse table"),
        }
    }

    /// All stored `(set, value)` pairs, in no particular order.
    pub fn entries(&self) -> Vec<(VertexSet, u8)> {
        match &self.storage {
            Storage::Dense { values, .. } => values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != UNSET)
                .map(|(c, &v)| (self.scope.deposit(c as u64), v))
                .collect(),
            Storage::Sparse(map) => map.iter().map(|(&s, &(v, _))| (s, v)).collect(),
        }
    }
}
