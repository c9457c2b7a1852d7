#include "tqe/algebra.hpp"

#include <algorithm>
#include <set>

namespace tqe {

PredPtr Predicate::cmpAttr(CmpOp op, std::string lhs, std::string rhs) {
    auto p = std::make_shared<Predicate>();
    p->kind = Kind::Cmp;
    p->op = op;
    p->lhs = std::move(lhs);
    p->rhsIsAttr = true;
    p->rhsAttr = std::move(rhs);
    return p;
}

PredPtr Predicate::cmpLit(CmpOp op, std::string lhs, Value lit) {
    auto p = std::make_shared<Predicate>();
    p->kind = Kind::Cmp;
    p->op = op;
    p->lhs = std::move(lhs);
    p->rhsLit = std::move(lit);
    return p;
}

PredPtr Predicate::conj(std::vector<PredPtr> kids) {
    auto p = std::make_shared<Predicate>();
    p->kind = Kind::And;
    p->kids = std::move(kids);
    return p;
}

PredPtr Predicate::disj(std::vector<PredPtr> kids) {
    auto p = std::make_shared<Predicate>();
    p->kind = Kind::Or;
    p->kids = std::move(kids);
    return p;
}

bool evalPredicate(const Predicate& p, const Schema& schema, const Tuple& t) {
    switch (p.kind) {
    case Predicate::Kind::Cmp: {
        const Value& a = t[schema.indexOf(p.lhs)];
        const Value& b = p.rhsIsAttr ? t[schema.indexOf(p.rhsAttr)] : p.rhsLit;
        if (a.isNull() || b.isNull())
            return false;
        if (a.isNumeric() != b.isNumeric())
            throw ContractError("type-incompatible comparison");
        auto c = a <=> b;
        switch (p.op) {
        case CmpOp::Eq: return c == std::strong_ordering::equal;
        case CmpOp::Ne: return c != std::strong_ordering::equal;
        case CmpOp::Lt: return c == std::strong_ordering::less;
        case CmpOp::Le: return c != std::strong_ordering::greater;
        case CmpOp::Gt: return c == std::strong_ordering::greater;
        case CmpOp::Ge: return c != std::strong_ordering::less;
        }
        return false;
    }
    case Predicate::Kind::And:
        return std::all_of(p.kids.begin(), p.kids.end(), [&](const PredPtr& k) {
            return evalPredicate(*k, schema, t);
        });
    case Predicate::Kind::Or:
        return std::any_of(p.kids.begin(), p.kids.end(), [&](const PredPtr& k) {
            return evalPredicate(*k, schema, t);
        });
    }
    return false;
}

ProjItem ProjItem::attr(std::string name) {
    ProjItem it{Kind::Attr, name, Value(), name};
    return it;
}

ProjItem ProjItem::rename(std::string src, std::string out) {
    return ProjItem{Kind::Attr, std::move(src), Value(), std::move(out)};
}

ProjItem ProjItem::constant(Value lit, std::string out) {
    return ProjItem{Kind::Const, "", std::move(lit), std::move(out)};
}

std::string aggAttrName(AggFunc f) {
    switch (f) {
    case AggFunc::CountStar:
    case AggFunc::Count: return "count";
    case AggFunc::Sum: return "sum";
    case AggFunc::Avg: return "avg";
    case AggFunc::Min: return "min";
    case AggFunc::Max: return "max";
    }
    return "agg";
}

QueryPtr Query::rel(std::string name) {
    auto q = std::make_shared<Query>();
    q->kind = Kind::Rel;
    q->relName = std::move(name);
    return q;
}

QueryPtr Query::select(PredPtr pred, QueryPtr child) {
    auto q = std::make_shared<Query>();
    q->kind = Kind::Select;
    q->pred = std::move(pred);
    q->left = std::move(child);
    return q;
}

QueryPtr Query::project(std::vector<ProjItem> items, QueryPtr child) {
    auto q = std::make_shared<Query>();
    q->kind = Kind::Project;
    q->items = std::move(items);
    q->left = std::move(child);
    return q;
}

QueryPtr Query::join(PredPtr pred, QueryPtr l, QueryPtr r) {
    auto q = std::make_shared<Query>();
    q->kind = Kind::Join;
    q->pred = std::move(pred);
    q->left = std::move(l);
    q->right = std::move(r);
    return q;
}

QueryPtr Query::setUnion(QueryPtr l, QueryPtr r) {
    auto q = std::make_shared<Query>();
    q->kind = Kind::Union;
    q->left = std::move(l);
    q->right = std::move(r);
    return q;
}

QueryPtr Query::diff(QueryPtr l, QueryPtr r) {
    auto q = std::make_shared<Query>();
    q->kind = Kind::Diff;
    q->left = std::move(l);
    q->right = std::move(r);
    return q;
}

QueryPtr Query::agg(std::vector<std::string> groupBy, AggFunc f,
                    std::string argAttr, QueryPtr child) {
    auto q = std::make_shared<Query>();
    q->kind = Kind::Agg;
    q->groupBy = std::move(groupBy);
    q->func = f;
    q->argAttr = std::move(argAttr);
    q->left = std::move(child);
    return q;
}

namespace {

void validatePred(const Predicate& p, const Schema& schema) {
    switch (p.kind) {
    case Predicate::Kind::Cmp:
        schema.indexOf(p.lhs);
        if (p.rhsIsAttr)
            schema.indexOf(p.rhsAttr);
        return;
    case Predicate::Kind::And:
    case Predicate::Kind::Or:
        for (const auto& k : p.kids)
            validatePred(*k, schema);
        return;
    }
}

} // namespace

Schema validate(const QueryPtr& q, const std::map<std::string, Schema>& schemas,
                SemiringKind kind) {
    switch (q->kind) {
    case Query::Kind::Rel: {
        auto it = schemas.find(q->relName);
        if (it == schemas.end())
            throw ContractError("unknown relation: " + q->relName);
        return it->second;
    }
    case Query::Kind::Select: {
        Schema s = validate(q->left, schemas, kind);
        validatePred(*q->pred, s);
        return s;
    }
    case Query::Kind::Project: {
        Schema s = validate(q->left, schemas, kind);
        Schema out;
        for (const auto& item : q->items) {
            if (item.kind == ProjItem::Kind::Attr)
                s.indexOf(item.src);
            out.attrs.push_back(item.out);
        }
        return out;
    }
    case Query::Kind::Join: {
        Schema l = validate(q->left, schemas, kind);
        Schema r = validate(q->right, schemas, kind);
        Schema out = l;
        out.attrs.insert(out.attrs.end(), r.attrs.begin(), r.attrs.end());
        validatePred(*q->pred, out);
        return out;
    }
    case Query::Kind::Union:
    case Query::Kind::Diff: {
        Schema l = validate(q->left, schemas, kind);
        Schema r = validate(q->right, schemas, kind);
        if (l.arity() != r.arity())
            throw ContractError("union-incompatible operands");
        return l;
    }
    case Query::Kind::Agg: {
        if (kind != SemiringKind::Bag)
            throw ContractError("aggregation requires the bag semiring");
        Schema s = validate(q->left, schemas, kind);
        Schema out;
        for (const auto& g : q->groupBy) {
            s.indexOf(g);
            out.attrs.push_back(g);
        }
        if (q->func != AggFunc::CountStar)
            s.indexOf(q->argAttr);
        out.attrs.push_back(aggAttrName(q->func));
        return out;
    }
    }
    throw ContractError("malformed query node");
}

KRelation aggregateSnapshot(const KRelation& slice,
                            const std::vector<std::string>& groupBy,
                            AggFunc f, const std::string& argAttr) {
    if (slice.kind() != SemiringKind::Bag)
        throw ContractError("aggregation requires the bag semiring");
    const Schema& in = slice.schema();
    std::vector<std::size_t> groupIdx;
    for (const auto& g : groupBy)
        groupIdx.push_back(in.indexOf(g));
    std::ptrdiff_t argIdx =
        f == AggFunc::CountStar ? -1 : (std::ptrdiff_t)in.indexOf(argAttr);

    struct Acc {
        std::int64_t total = 0;
        std::int64_t nonNull = 0;
        Rational sum;
        bool haveOrd = false;
        Value minV, maxV;
    };
    std::map<Tuple, Acc> groups;
    for (const auto& [t, v] : slice.data()) {
        Tuple key;
        for (auto i : groupIdx)
            key.push_back(t[i]);
        Acc& a = groups[key];
        std::int64_t mult = v.asInt();
        a.total += mult;
        if (argIdx >= 0) {
            const Value& arg = t[(std::size_t)argIdx];
            if (!arg.isNull()) {
                a.nonNull += mult;
                if (f == AggFunc::Sum || f == AggFunc::Avg) {
                    if (!arg.isNumeric())
                        throw ContractError("non-numeric aggregate argument");
                    a.sum = a.sum + arg.toRational() * Rational(mult);
                }
                if (f == AggFunc::Min || f == AggFunc::Max) {
                    if (!a.haveOrd) {
                        a.minV = a.maxV = arg;
                        a.haveOrd = true;
                    } else {
                        if (arg < a.minV) a.minV = arg;
                        if (arg > a.maxV) a.maxV = arg;
                    }
                }
            }
        }
    }
    // SQL convention: a query without group-by produces exactly one row
    // even over an empty input.
    if (groupBy.empty() && groups.empty())
        groups.emplace(Tuple{}, Acc{});

    Schema out;
    out.attrs = groupBy;
    out.attrs.push_back(aggAttrName(f));
    KRelation result(out, SemiringKind::Bag);
    SemiringSpec sp(SemiringKind::Bag);
    auto canon = [](const Rational& r) {
        return r.isInteger() ? Value(r.num()) : Value(r);
    };
    for (const auto& [key, a] : groups) {
        Value agg;
        switch (f) {
        case AggFunc::CountStar: agg = Value(a.total); break;
        case AggFunc::Count: agg = Value(a.nonNull); break;
        case AggFunc::Sum:
            agg = a.nonNull ? canon(a.sum) : Value::null();
            break;
        case AggFunc::Avg:
            agg = a.nonNull ? canon(a.sum / Rational(a.nonNull)) : Value::null();
            break;
        case AggFunc::Min: agg = a.haveOrd ? a.minV : Value::null(); break;
        case AggFunc::Max: agg = a.haveOrd ? a.maxV : Value::null(); break;
        }
        Tuple row = key;
        row.push_back(agg);
        result.add(row, sp.one());
    }
    return result;
}

PeriodKRelation evalAggLogical(const std::vector<std::string>& groupBy,
                               AggFunc f, const std::string& argAttr,
                               const PeriodKRelation& child) {
    if (child.kind() != SemiringKind::Bag)
        throw ContractError("aggregation requires the bag semiring");
    const TimeDomain& dom = child.domain();
    // Every output snapshot is constant between consecutive endpoints of
    // the child's support intervals, so aggregate once per such segment.
    std::set<Tick> bounds{dom.tmin, dom.tmax};
    for (const auto& [t, e] : child.data()) {
        for (const auto& [iv, v] : e.support()) {
            bounds.insert(iv.begin);
            bounds.insert(iv.end);
        }
    }
    Schema out;
    out.attrs = groupBy;
    out.attrs.push_back(aggAttrName(f));
    PeriodKRelation result(out, SemiringKind::Bag, dom);
    SemiringSpec sp(SemiringKind::Bag);
    Tick prev = dom.tmin;
    for (Tick b : bounds) {
        if (b > prev) {
            KRelation rows =
                aggregateSnapshot(relTimeslice(child, prev), groupBy, f, argAttr);
            for (const auto& [row, v] : rows.data()) {
                if (v != sp.one())
                    throw Error("aggregate row with multiplicity != 1");
                result.add(row, Interval(prev, b), v);
            }
            prev = b;
        }
    }
    return result.normalized();
}

namespace {

PeriodKRelation evalNode(const QueryPtr& q, const Catalog& db,
                         SemiringKind kind, const TimeDomain& dom) {
    switch (q->kind) {
    case Query::Kind::Rel: {
        auto it = db.find(q->relName);
        if (it == db.end())
            throw ContractError("unknown relation: " + q->relName);
        return it->second.normalized();
    }
    case Query::Kind::Select: {
        PeriodKRelation c = evalNode(q->left, db, kind, dom);
        PeriodKRelation out(c.schema(), kind, dom);
        for (const auto& [t, e] : c.data()) {
            if (evalPredicate(*q->pred, c.schema(), t))
                out.addElement(t, e);
        }
        return out.normalized();
    }
    case Query::Kind::Project: {
        PeriodKRelation c = evalNode(q->left, db, kind, dom);
        Schema out;
        for (const auto& item : q->items)
            out.attrs.push_back(item.out);
        PeriodKRelation result(out, kind, dom);
        for (const auto& [t, e] : c.data()) {
            Tuple row;
            for (const auto& item : q->items) {
                row.push_back(item.kind == ProjItem::Kind::Attr
                                  ? t[c.schema().indexOf(item.src)]
                                  : item.lit);
            }
            result.addElement(row, e);
        }
        return result.normalized();
    }
    case Query::Kind::Join: {
        PeriodKRelation l = evalNode(q->left, db, kind, dom);
        PeriodKRelation r = evalNode(q->right, db, kind, dom);
        Schema out = l.schema();
        out.attrs.insert(out.attrs.end(), r.schema().attrs.begin(),
                         r.schema().attrs.end());
        PeriodKRelation result(out, kind, dom);
        for (const auto& [lt, le] : l.data()) {
            for (const auto& [rt, re] : r.data()) {
                Tuple row = lt;
                row.insert(row.end(), rt.begin(), rt.end());
                if (!evalPredicate(*q->pred, out, row))
                    continue;
                result.addElement(row, pMulPointwise(le, re));
            }
        }
        return result.normalized();
    }
    case Query::Kind::Union: {
        PeriodKRelation l = evalNode(q->left, db, kind, dom);
        PeriodKRelation r = evalNode(q->right, db, kind, dom);
        PeriodKRelation out(l.schema(), kind, dom);
        for (const auto& [t, e] : l.data())
            out.addElement(t, e);
        for (const auto& [t, e] : r.data())
            out.addElement(t, e);
        return out.normalized();
    }
    case Query::Kind::Diff: {
        PeriodKRelation l = evalNode(q->left, db, kind, dom);
        PeriodKRelation r = evalNode(q->right, db, kind, dom);
        PeriodKRelation out(l.schema(), kind, dom);
        for (const auto& [t, e] : l.data())
            out.addElement(t, pMonus(e, r.at(t)));
        return out.normalized();
    }
    case Query::Kind::Agg:
        return evalAggLogical(q->groupBy, q->func, q->argAttr,
                              evalNode(q->left, db, kind, dom));
    }
    throw ContractError("malformed query node");
}

} // namespace

PeriodKRelation evalLogical(const QueryPtr& q, const Catalog& db) {
    if (db.empty())
        throw ContractError("empty catalog");
    SemiringKind kind = db.begin()->second.kind();
    TimeDomain dom = db.begin()->second.domain();
    std::map<std::string, Schema> schemas;
    for (const auto& [name, rel] : db) {
        if (rel.kind() != kind || rel.domain() != dom)
            throw ContractError("catalog relations disagree on kind or domain");
        schemas.emplace(name, rel.schema());
    }
    validate(q, schemas, kind);
    return evalNode(q, db, kind, dom);
}

} // namespace tqe
