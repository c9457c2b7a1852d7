#include "tqe/parser.hpp"

#include <doctest.h>

using namespace tqe;

TEST_CASE("parses the staffing count query") {
    QueryPtr q = parseQuery(
        "(agg () (count *) (select (cmp = skill \"SP\") (rel works)))");
    REQUIRE(q->kind == Query::Kind::Agg);
    CHECK(q->groupBy.empty());
    CHECK(q->func == AggFunc::CountStar);
    REQUIRE(q->left->kind == Query::Kind::Select);
    const Predicate& p = *q->left->pred;
    CHECK(p.kind == Predicate::Kind::Cmp);
    CHECK(p.op == CmpOp::Eq);
    CHECK(p.lhs == "skill");
    CHECK_FALSE(p.rhsIsAttr);
    CHECK(p.rhsLit == Value("SP"));
    CHECK(q->left->left->kind == Query::Kind::Rel);
    CHECK(q->left->left->relName == "works");
}

TEST_CASE("parses the skill-gap difference query") {
    QueryPtr q = parseQuery("(diff (project (skill) (rel assign)) "
                            "(project (skill) (rel works)))");
    REQUIRE(q->kind == Query::Kind::Diff);
    REQUIRE(q->left->kind == Query::Kind::Project);
    REQUIRE(q->left->items.size() == 1);
    CHECK(q->left->items[0].kind == ProjItem::Kind::Attr);
    CHECK(q->left->items[0].src == "skill");
    CHECK(q->left->items[0].out == "skill");
    CHECK(q->right->left->relName == "works");
}

TEST_CASE("projection expressions: rename and constant") {
    QueryPtr q =
        parseQuery("(project ((-> skill s) (-> 1 one) (-> 2.5 rate)) (rel r))");
    REQUIRE(q->items.size() == 3);
    CHECK(q->items[0].kind == ProjItem::Kind::Attr);
    CHECK(q->items[0].src == "skill");
    CHECK(q->items[0].out == "s");
    CHECK(q->items[1].kind == ProjItem::Kind::Const);
    CHECK(q->items[1].lit == Value(std::int64_t(1)));
    CHECK(q->items[1].out == "one");
    CHECK(q->items[2].lit == Value(Rational(5, 2)));
}

TEST_CASE("predicate trees and operators") {
    QueryPtr q = parseQuery("(select (and (cmp <> a b) "
                            "(or (cmp < a 3) (cmp >= a -4))) (rel r))");
    const Predicate& p = *q->pred;
    REQUIRE(p.kind == Predicate::Kind::And);
    REQUIRE(p.kids.size() == 2);
    CHECK(p.kids[0]->op == CmpOp::Ne);
    CHECK(p.kids[0]->rhsIsAttr);
    REQUIRE(p.kids[1]->kind == Predicate::Kind::Or);
    CHECK(p.kids[1]->kids[0]->op == CmpOp::Lt);
    CHECK(p.kids[1]->kids[1]->op == CmpOp::Ge);
    CHECK(p.kids[1]->kids[1]->rhsLit == Value(std::int64_t(-4)));
}

TEST_CASE("aggregates with groups and arguments") {
    QueryPtr q = parseQuery("(agg (mach site) (avg consum) (rel active))");
    CHECK(q->groupBy == std::vector<std::string>{"mach", "site"});
    CHECK(q->func == AggFunc::Avg);
    CHECK(q->argAttr == "consum");
    CHECK(parseQuery("(agg () (min x) (rel r))")->func == AggFunc::Min);
}

TEST_CASE("string escapes") {
    QueryPtr q = parseQuery("(select (cmp = a \"say \\\"hi\\\"\") (rel r))");
    CHECK(q->pred->rhsLit == Value("say \"hi\""));
}

TEST_CASE("positioned errors") {
    CHECK_THROWS_AS(parseQuery("(rel works"), ParseError);
    try {
        parseQuery("(rel works");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.col() == 11);
    }
    CHECK_THROWS_AS(parseQuery("(frobnicate x)"), ParseError);
    CHECK_THROWS_AS(parseQuery("(rel a) (rel b)"), ParseError);
    CHECK_THROWS_AS(parseQuery("(cmp = a 1)"), ParseError);
    CHECK_THROWS_AS(parseQuery("(agg () (sum) (rel r))"), ParseError);
    CHECK_THROWS_AS(parseQuery("(agg () (sum *) (rel r))"), ParseError);
    CHECK_THROWS_AS(parseQuery("(select (cmp = a \"unterminated) (rel r))"),
                    ParseError);
    CHECK_THROWS_AS(parseQuery(""), ParseError);
    try {
        parseQuery("(select\n  (cmp ~ a 1) (rel r))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}
