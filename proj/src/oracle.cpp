#include "tqe/oracle.hpp"

#include <random>
#include <sstream>

namespace tqe {

namespace {

KRelation snapEval(const QueryPtr& q, const std::map<std::string, KRelation>& db,
                   SemiringKind kind) {
    SemiringSpec sp(kind);
    switch (q->kind) {
    case Query::Kind::Rel: {
        auto it = db.find(q->relName);
        if (it == db.end())
            throw ContractError("unknown relation: " + q->relName);
        return it->second;
    }
    case Query::Kind::Select: {
        KRelation c = snapEval(q->left, db, kind);
        KRelation out(c.schema(), kind);
        for (const auto& [t, v] : c.data()) {
            if (evalPredicate(*q->pred, c.schema(), t))
                out.add(t, v);
        }
        return out;
    }
    case Query::Kind::Project: {
        KRelation c = snapEval(q->left, db, kind);
        Schema s;
        for (const auto& item : q->items)
            s.attrs.push_back(item.out);
        KRelation out(s, kind);
        for (const auto& [t, v] : c.data()) {
            Tuple row;
            for (const auto& item : q->items) {
                row.push_back(item.kind == ProjItem::Kind::Attr
                                  ? t[c.schema().indexOf(item.src)]
                                  : item.lit);
            }
            out.add(row, v);
        }
        return out;
    }
    case Query::Kind::Join: {
        KRelation l = snapEval(q->left, db, kind);
        KRelation r = snapEval(q->right, db, kind);
        Schema s = l.schema();
        s.attrs.insert(s.attrs.end(), r.schema().attrs.begin(),
                       r.schema().attrs.end());
        KRelation out(s, kind);
        for (const auto& [lt, lv] : l.data()) {
            for (const auto& [rt, rv] : r.data()) {
                Tuple row = lt;
                row.insert(row.end(), rt.begin(), rt.end());
                if (evalPredicate(*q->pred, s, row))
                    out.add(row, sp.mul(lv, rv));
            }
        }
        return out;
    }
    case Query::Kind::Union: {
        KRelation l = snapEval(q->left, db, kind);
        KRelation r = snapEval(q->right, db, kind);
        KRelation out = l;
        for (const auto& [t, v] : r.data())
            out.add(t, v);
        return out;
    }
    case Query::Kind::Diff: {
        KRelation l = snapEval(q->left, db, kind);
        KRelation r = snapEval(q->right, db, kind);
        KRelation out(l.schema(), kind);
        for (const auto& [t, v] : l.data())
            out.add(t, sp.monus(v, r.at(t)));
        return out;
    }
    case Query::Kind::Agg:
        return aggregateSnapshot(snapEval(q->left, db, kind), q->groupBy,
                                 q->func, q->argAttr);
    }
    throw ContractError("malformed query node");
}

} // namespace

KRelation snapshotEval(const QueryPtr& q,
                       const std::map<std::string, KRelation>& db) {
    if (db.empty())
        throw ContractError("empty catalog");
    SemiringKind kind = db.begin()->second.kind();
    return snapEval(q, db, kind);
}

PeriodKRelation oracleEval(const QueryPtr& q, const Catalog& db) {
    if (db.empty())
        throw ContractError("empty catalog");
    SemiringKind kind = db.begin()->second.kind();
    TimeDomain dom = db.begin()->second.domain();
    std::map<std::string, Schema> schemas;
    for (const auto& [name, rel] : db)
        schemas.emplace(name, rel.schema());
    Schema out = validate(q, schemas, kind);
    PeriodKRelation result(out, kind, dom);
    for (Tick t = dom.tmin; t < dom.tmax; ++t) {
        std::map<std::string, KRelation> slice;
        for (const auto& [name, rel] : db)
            slice.emplace(name, relTimeslice(rel, t));
        KRelation snap = snapEval(q, slice, kind);
        for (const auto& [tuple, v] : snap.data())
            result.add(tuple, Interval(t, t + 1), v);
    }
    return result.normalized();
}

std::string describeKRelation(const KRelation& r) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [t, v] : r.data()) {
        if (!first)
            os << ", ";
        first = false;
        os << "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i)
                os << ",";
            os << (t[i].isNull() ? std::string("null") : t[i].toString());
        }
        os << ")->" << v.raw;
    }
    os << "}";
    return os.str();
}

namespace {

using Rng = std::mt19937_64;

std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + (std::int64_t)(rng() % (std::uint64_t)(hi - lo + 1));
}

const std::vector<std::string> kStrings = {"x", "y", "z"};

Value randomLit(Rng& rng, char type) {
    if (type == 's')
        return Value(kStrings[(std::size_t)pick(rng, 0, 2)]);
    return Value(pick(rng, 0, 4));
}

struct GenQ {
    QueryPtr q;
    Schema schema;
    std::string types; // one of 's'/'i' per column
};

PredPtr randomPred(Rng& rng, const Schema& schema, const std::string& types) {
    auto cmp = [&]() -> PredPtr {
        std::size_t li = (std::size_t)pick(rng, 0, (std::int64_t)schema.arity() - 1);
        CmpOp op = (CmpOp)pick(rng, 0, 5);
        // Attribute partner of the same type, else a literal.
        if (pick(rng, 0, 1) == 0) {
            std::vector<std::size_t> same;
            for (std::size_t i = 0; i < types.size(); ++i)
                if (types[i] == types[li])
                    same.push_back(i);
            std::size_t ri = same[(std::size_t)pick(rng, 0, (std::int64_t)same.size() - 1)];
            return Predicate::cmpAttr(op, schema.attrs[li], schema.attrs[ri]);
        }
        return Predicate::cmpLit(op, schema.attrs[li], randomLit(rng, types[li]));
    };
    int n = (int)pick(rng, 1, 2);
    if (n == 1)
        return cmp();
    std::vector<PredPtr> kids{cmp(), cmp()};
    return pick(rng, 0, 1) == 0 ? Predicate::conj(std::move(kids))
                                : Predicate::disj(std::move(kids));
}

GenQ genQuery(Rng& rng, int depth, int numRels, SemiringKind kind, int& fresh);

/// Coerces a subtree to the given column type layout by projecting
/// same-typed columns (or constants where none exist).
GenQ coerceTo(Rng& rng, GenQ g, const std::string& types, int& fresh) {
    std::vector<ProjItem> items;
    Schema out;
    std::string outTypes;
    for (char want : types) {
        std::vector<std::size_t> same;
        for (std::size_t i = 0; i < g.types.size(); ++i)
            if (g.types[i] == want)
                same.push_back(i);
        std::string name = "c" + std::to_string(fresh++);
        if (same.empty()) {
            items.push_back(ProjItem::constant(randomLit(rng, want), name));
        } else {
            std::size_t i = same[(std::size_t)pick(rng, 0, (std::int64_t)same.size() - 1)];
            items.push_back(ProjItem::rename(g.schema.attrs[i], name));
        }
        out.attrs.push_back(name);
        outTypes.push_back(want);
    }
    return GenQ{Query::project(std::move(items), g.q), out, outTypes};
}

GenQ genQuery(Rng& rng, int depth, int numRels, SemiringKind kind, int& fresh) {
    if (depth <= 0) {
        std::string name = "r" + std::to_string(pick(rng, 0, numRels - 1));
        return GenQ{Query::rel(name), Schema{{"a", "b"}}, "si"};
    }
    int choice = (int)pick(rng, 0, kind == SemiringKind::Bag ? 6 : 5);
    switch (choice) {
    case 0: // plain relation at reduced depth
        return genQuery(rng, 0, numRels, kind, fresh);
    case 1: {
        GenQ c = genQuery(rng, depth - 1, numRels, kind, fresh);
        return GenQ{Query::select(randomPred(rng, c.schema, c.types), c.q),
                    c.schema, c.types};
    }
    case 2: {
        GenQ c = genQuery(rng, depth - 1, numRels, kind, fresh);
        int n = (int)pick(rng, 1, (std::int64_t)c.schema.arity());
        std::vector<ProjItem> items;
        Schema out;
        std::string types;
        for (int i = 0; i < n; ++i) {
            std::string name = "c" + std::to_string(fresh++);
            if (pick(rng, 0, 3) == 0) {
                char t = pick(rng, 0, 1) == 0 ? 's' : 'i';
                items.push_back(ProjItem::constant(randomLit(rng, t), name));
                types.push_back(t);
            } else {
                std::size_t i2 =
                    (std::size_t)pick(rng, 0, (std::int64_t)c.schema.arity() - 1);
                items.push_back(ProjItem::rename(c.schema.attrs[i2], name));
                types.push_back(c.types[i2]);
            }
            out.attrs.push_back(name);
        }
        return GenQ{Query::project(std::move(items), c.q), out, types};
    }
    case 3: {
        GenQ l = genQuery(rng, depth - 1, numRels, kind, fresh);
        GenQ r = genQuery(rng, depth - 1, numRels, kind, fresh);
        // Rename the right side so attribute references stay unambiguous.
        std::string rtypes = r.types;
        r = coerceTo(rng, std::move(r), rtypes, fresh);
        Schema s = l.schema;
        s.attrs.insert(s.attrs.end(), r.schema.attrs.begin(), r.schema.attrs.end());
        std::string types = l.types + r.types;
        return GenQ{Query::join(randomPred(rng, s, types), l.q, r.q), s, types};
    }
    case 4:
    case 5: {
        GenQ l = genQuery(rng, depth - 1, numRels, kind, fresh);
        GenQ r = genQuery(rng, depth - 1, numRels, kind, fresh);
        if (r.types != l.types)
            r = coerceTo(rng, std::move(r), l.types, fresh);
        QueryPtr q = choice == 4 ? Query::setUnion(l.q, r.q)
                                 : Query::diff(l.q, r.q);
        return GenQ{q, l.schema, l.types};
    }
    default: { // aggregation, bag only
        GenQ c = genQuery(rng, depth - 1, numRels, kind, fresh);
        std::vector<std::string> groupBy;
        std::string gtypes;
        for (std::size_t i = 0; i < c.schema.arity(); ++i) {
            if (pick(rng, 0, 1) == 0) {
                groupBy.push_back(c.schema.attrs[i]);
                gtypes.push_back(c.types[i]);
            }
        }
        AggFunc f = (AggFunc)pick(rng, 0, 5);
        std::string arg;
        char atype = 'i';
        if (f == AggFunc::Sum || f == AggFunc::Avg) {
            std::vector<std::size_t> ints;
            for (std::size_t i = 0; i < c.types.size(); ++i)
                if (c.types[i] == 'i')
                    ints.push_back(i);
            if (ints.empty()) {
                f = AggFunc::CountStar;
            } else {
                std::size_t i =
                    ints[(std::size_t)pick(rng, 0, (std::int64_t)ints.size() - 1)];
                arg = c.schema.attrs[i];
            }
        } else if (f != AggFunc::CountStar) {
            std::size_t i =
                (std::size_t)pick(rng, 0, (std::int64_t)c.schema.arity() - 1);
            arg = c.schema.attrs[i];
            if (f == AggFunc::Min || f == AggFunc::Max)
                atype = c.types[i];
        }
        Schema out;
        out.attrs = groupBy;
        out.attrs.push_back(aggAttrName(f));
        gtypes.push_back(atype);
        return GenQ{Query::agg(groupBy, f, arg, c.q), out, gtypes};
    }
    }
}

} // namespace

RandomInstance makeRandomInstance(std::uint64_t seed, const OracleBounds& b) {
    Rng rng(seed);
    SemiringKind kind = (b.bagOnly || pick(rng, 0, 2) > 0) ? SemiringKind::Bag
                                                           : SemiringKind::Set;
    TimeDomain dom(0, pick(rng, 1, b.maxTicks));
    int numRels = (int)pick(rng, 1, b.maxRelations);
    Catalog db;
    Schema schema{{"a", "b"}};
    for (int r = 0; r < numRels; ++r) {
        PeriodKRelation rel(schema, kind, dom);
        int numTuples = (int)pick(rng, 0, b.maxTuples);
        for (int i = 0; i < numTuples; ++i) {
            Tuple t{randomLit(rng, 's'), randomLit(rng, 'i')};
            int numIvs = (int)pick(rng, 1, 2);
            for (int j = 0; j < numIvs; ++j) {
                Tick begin = pick(rng, dom.tmin, dom.tmax - 1);
                Tick end = pick(rng, begin + 1, dom.tmax);
                std::int64_t mult =
                    kind == SemiringKind::Set ? 1 : pick(rng, 1, b.maxMult);
                rel.add(t, Interval(begin, end), KValue{kind, mult});
            }
        }
        db.emplace("r" + std::to_string(r), rel.normalized());
    }
    int depth = (int)pick(rng, 0, b.maxDepth);
    int fresh = 0;
    GenQ g = genQuery(rng, depth, numRels, kind, fresh);
    return RandomInstance{std::move(db), g.q};
}

namespace {

OracleReport mismatchReport(std::uint64_t seed, const std::string& detail,
                            const PeriodKRelation& expected,
                            const PeriodKRelation& actual) {
    OracleReport rep;
    rep.seed = seed;
    rep.ok = false;
    rep.detail = detail;
    const TimeDomain& dom = expected.domain();
    for (Tick t = dom.tmin; t < dom.tmax; ++t) {
        KRelation e = relTimeslice(expected, t);
        KRelation a(e.schema(), e.kind());
        // Schemas may carry different generated names; compare values only.
        KRelation actualSlice = relTimeslice(actual, t);
        for (const auto& [tuple, v] : actualSlice.data())
            a.add(tuple, v);
        if (!(e == a)) {
            rep.mismatchTick = t;
            rep.expected = describeKRelation(e);
            rep.actual = describeKRelation(a);
            break;
        }
    }
    if (!rep.mismatchTick) {
        rep.expected = "(snapshots agree; support representation differs)";
        rep.actual = rep.expected;
    }
    return rep;
}

bool sameSnapshots(const PeriodKRelation& a, const PeriodKRelation& b) {
    if (a.domain() != b.domain() || a.kind() != b.kind())
        return false;
    if (a.data().size() != b.data().size())
        return false;
    auto ia = a.data().begin();
    auto ib = b.data().begin();
    for (; ia != a.data().end(); ++ia, ++ib) {
        if (ia->first != ib->first || !(ia->second == ib->second))
            return false;
    }
    return true;
}

} // namespace

DifferentialResult differentialCheck(
    int seedCount, const OracleBounds& bounds,
    const std::function<PeriodKRelation(const QueryPtr&, const Catalog&)>&
        logicalEval) {
    DifferentialResult result;
    auto logical = logicalEval
                       ? logicalEval
                       : [](const QueryPtr& q, const Catalog& db) {
                             return evalLogical(q, db);
                         };
    for (int s = 0; s < seedCount; ++s) {
        std::uint64_t seed = (std::uint64_t)s;
        RandomInstance inst = makeRandomInstance(seed, bounds);
        ++result.seedsRun;
        PeriodKRelation expected = oracleEval(inst.query, inst.db);
        PeriodKRelation got = logical(inst.query, inst.db);
        if (!sameSnapshots(expected, got)) {
            result.failures.push_back(
                mismatchReport(seed, "logical vs oracle", expected, got));
            continue;
        }
        if (inst.db.begin()->second.kind() != SemiringKind::Bag)
            continue;
        std::map<std::string, SqlPeriodRelation> sqlDb;
        for (const auto& [name, rel] : inst.db)
            sqlDb.emplace(name, periodEnc(rel));
        for (bool pullUp : {false, true}) {
            PeriodKRelation phys = periodEncInv(
                evalPhysical(rewrite(inst.query, pullUp), sqlDb));
            if (!sameSnapshots(expected, phys)) {
                result.failures.push_back(mismatchReport(
                    seed,
                    pullUp ? "physical(pull-up) vs oracle"
                           : "physical vs oracle",
                    expected, phys));
                break;
            }
        }
    }
    return result;
}

} // namespace tqe
