//! The bundled example programs.

use crate::target::{parse_file, TargetExpr};

pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

pub const INS: Fixture = Fixture {
    name: "ins",
    source: include_str!("../examples/ins.tgt"),
};

pub const INS_SORT: Fixture = Fixture {
    name: "ins_sort",
    source: include_str!("../examples/ins_sort.tgt"),
};

pub const MAP: Fixture = Fixture {
    name: "map",
    source: include_str!("../examples/map.tgt"),
};

pub const LIST_FOLD: Fixture = Fixture {
    name: "list_fold",
    source: include_str!("../examples/list_fold.tgt"),
};

pub const CASE_IF: Fixture = Fixture {
    name: "case_if",
    source: include_str!("../examples/case_if.tgt"),
};

pub const ALL: [Fixture; 5] = [INS, INS_SORT, MAP, LIST_FOLD, CASE_IF];

impl Fixture {
    /// Parses the fixture; the bundled sources are known to be valid.
    pub fn expr(&self) -> TargetExpr {
        parse_file(self.source).unwrap_or_else(|e| panic!("fixture {}: {e}", self.name))
    }
}

pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::{typecheck, TargetTy, TypeContext};

    #[test]
    fn fixtures_typecheck() {
        let int_list = TargetTy::IntList;
        let int_fn = TargetTy::arrow(TargetTy::Int, TargetTy::Int);
        let expected = [
            TargetTy::curried([TargetTy::Int, int_list.clone()], int_list.clone()),
            TargetTy::arrow(int_list.clone(), int_list.clone()),
            TargetTy::curried([int_fn, int_list.clone()], int_list.clone()),
            TargetTy::curried(
                [
                    TargetTy::curried([TargetTy::Int, int_list.clone()], int_list.clone()),
                    int_list.clone(),
                    int_list.clone(),
                ],
                int_list.clone(),
            ),
            int_list,
        ];
        for (f, ty) in ALL.iter().zip(expected) {
            assert_eq!(
                typecheck(&TypeContext::new(), &f.expr()),
                Ok(ty),
                "{}",
                f.name
            );
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("map").unwrap().name, "map");
        assert!(by_name("nope").is_none());
    }
}
