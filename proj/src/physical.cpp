#include "tqe/physical.hpp"

#include <algorithm>
#include <set>

namespace tqe {

namespace {

std::vector<std::size_t> indicesOf(const Schema& s,
                                   const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    for (const auto& n : names)
        idx.push_back(s.indexOf(n));
    return idx;
}

Tuple projectKey(const Tuple& t, const std::vector<std::size_t>& idx) {
    Tuple key;
    for (auto i : idx)
        key.push_back(t[i]);
    return key;
}

std::int64_t mulChecked(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("multiplicity overflow");
    return out;
}

} // namespace

SqlPeriodRelation coalesceOpC(const SqlPeriodRelation& r) {
    // Per tuple: +mult at each begin, -mult at each end, then sweep the
    // running open count; only ticks where the count changes cut. Rows
    // with equal values are contiguous in the input map, and the output
    // comes out in row order, so each group is one pass plus appends.
    SqlPeriodRelation out(r.schema(), r.domain());
    std::vector<std::pair<Tick, std::int64_t>> d;
    auto it = r.rows().begin();
    const auto last = r.rows().end();
    while (it != last) {
        const Tuple& vals = it->first.vals;
        d.clear();
        for (; it != last && it->first.vals == vals; ++it) {
            d.emplace_back(it->first.begin, it->second);
            d.emplace_back(it->first.end, -it->second);
        }
        std::sort(d.begin(), d.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::int64_t open = 0;
        Tick prev = 0;
        for (std::size_t i = 0; i < d.size();) {
            Tick t = d[i].first;
            std::int64_t dv = 0;
            for (; i < d.size() && d[i].first == t; ++i)
                dv += d[i].second;
            if (dv == 0)
                continue;
            if (open > 0)
                out.append(Row{vals, prev, t}, open);
            open += dv;
            prev = t;
        }
    }
    return out;
}

SqlPeriodRelation splitOp(const SqlPeriodRelation& r1,
                          const SqlPeriodRelation& r2,
                          const std::vector<std::string>& g) {
    if (r1.schema().arity() != r2.schema().arity())
        throw ContractError("split over incompatible relations");
    auto idx1 = indicesOf(r1.schema(), g);
    auto idx2 = indicesOf(r2.schema(), g);
    std::map<Tuple, std::set<Tick>> bounds;
    for (const auto& [row, mult] : r1.rows()) {
        auto& b = bounds[projectKey(row.vals, idx1)];
        b.insert(row.begin);
        b.insert(row.end);
    }
    for (const auto& [row, mult] : r2.rows()) {
        auto& b = bounds[projectKey(row.vals, idx2)];
        b.insert(row.begin);
        b.insert(row.end);
    }
    SqlPeriodRelation out(r1.schema(), r1.domain());
    for (const auto& [row, mult] : r1.rows()) {
        const auto& b = bounds.at(projectKey(row.vals, idx1));
        Tick prev = row.begin;
        for (auto it = b.upper_bound(row.begin); it != b.end() && *it < row.end;
             ++it) {
            out.add(Row{row.vals, prev, *it}, mult);
            prev = *it;
        }
        out.add(Row{row.vals, prev, row.end}, mult);
    }
    return out;
}

SqlPeriodRelation bagDiff(const SqlPeriodRelation& a,
                          const SqlPeriodRelation& b) {
    if (a.schema().arity() != b.schema().arity())
        throw ContractError("difference over incompatible relations");
    SqlPeriodRelation out(a.schema(), a.domain());
    for (const auto& [row, mult] : a.rows()) {
        auto it = b.rows().find(row);
        std::int64_t rest = mult - (it == b.rows().end() ? 0 : it->second);
        if (rest > 0)
            out.add(row, rest);
    }
    return out;
}

SqlPeriodRelation splitDiffCount(const SqlPeriodRelation& l,
                                 const SqlPeriodRelation& r) {
    if (l.schema().arity() != r.schema().arity())
        throw ContractError("difference over incompatible relations");
    // One counting sweep per tuple: l opens count up, r counts down;
    // segments with positive running count survive with that count.
    std::map<Tuple, std::map<Tick, std::int64_t>> deltas;
    for (const auto& [row, mult] : l.rows()) {
        auto& d = deltas[row.vals];
        d[row.begin] += mult;
        d[row.end] -= mult;
    }
    for (const auto& [row, mult] : r.rows()) {
        auto& d = deltas[row.vals];
        d[row.begin] -= mult;
        d[row.end] += mult;
    }
    SqlPeriodRelation out(l.schema(), l.domain());
    for (const auto& [vals, d] : deltas) {
        std::int64_t running = 0;
        Tick prev = 0;
        for (const auto& [t, dv] : d) {
            if (dv == 0)
                continue;
            if (running > 0)
                out.add(Row{vals, prev, t}, running);
            running += dv;
            prev = t;
        }
    }
    return out;
}

namespace {

Value canonRational(const Rational& r) {
    return r.isInteger() ? Value(r.num()) : Value(r);
}

/// min/max path: split against itself on the group key, then aggregate
/// each aligned segment directly (no retraction exists for min/max).
SqlPeriodRelation aggBySplit(const std::vector<std::string>& groupBy,
                             AggFunc f, const std::string& argAttr,
                             const SqlPeriodRelation& child) {
    SqlPeriodRelation pieces = splitOp(child, child, groupBy);
    auto gIdx = indicesOf(child.schema(), groupBy);
    std::size_t aIdx = child.schema().indexOf(argAttr);

    struct Seg {
        bool have = false;
        Value best;
    };
    std::map<std::pair<Tuple, Interval>, Seg> segs;
    for (const auto& [row, mult] : pieces.rows()) {
        Seg& s = segs[{projectKey(row.vals, gIdx), Interval(row.begin, row.end)}];
        const Value& v = row.vals[aIdx];
        if (v.isNull())
            continue;
        if (!s.have) {
            s.best = v;
            s.have = true;
        } else if (f == AggFunc::Min ? v < s.best : v > s.best) {
            s.best = v;
        }
    }
    Schema out;
    out.attrs = groupBy;
    out.attrs.push_back(aggAttrName(f));
    SqlPeriodRelation result(out, child.domain());
    for (const auto& [key, s] : segs) {
        Tuple row = key.first;
        row.push_back(s.have ? s.best : Value::null());
        result.add(Row{row, key.second.begin, key.second.end}, 1);
    }
    return result;
}

} // namespace

SqlPeriodRelation splitAggSweep(const std::vector<std::string>& groupBy,
                                AggFunc f, const std::string& argAttr,
                                const SqlPeriodRelation& child,
                                const TimeDomain& dom) {
    if (f == AggFunc::CountStar) {
        // count(*) reduces to count over a projected constant column.
        Schema s;
        s.attrs = groupBy;
        s.attrs.push_back("count_arg");
        auto gIdx = indicesOf(child.schema(), groupBy);
        SqlPeriodRelation proj(s, child.domain());
        for (const auto& [row, mult] : child.rows()) {
            Tuple vals = projectKey(row.vals, gIdx);
            vals.push_back(Value(std::int64_t(1)));
            proj.add(Row{vals, row.begin, row.end}, mult);
        }
        return splitAggSweep(groupBy, AggFunc::Count, "count_arg", proj, dom);
    }

    SqlPeriodRelation input = child;
    if (groupBy.empty()) {
        // Padding row: makes the sweep cover the whole domain so gaps
        // emit the SQL empty-input row.
        Tuple nulls(child.schema().arity());
        input.add(Row{nulls, dom.tmin, dom.tmax}, 1);
    }

    if (f == AggFunc::Min || f == AggFunc::Max)
        return aggBySplit(groupBy, f, argAttr, input);

    auto gIdx = indicesOf(input.schema(), groupBy);
    std::size_t aIdx = input.schema().indexOf(argAttr);

    // Pre-aggregate per (group, begin, end), then sweep: rows add their
    // contribution at begin and retract it at end.
    struct Delta {
        std::int64_t total = 0;
        std::int64_t nonNull = 0;
        Rational sum;
    };
    std::map<Tuple, std::map<Tick, Delta>> events;
    for (const auto& [row, mult] : input.rows()) {
        const Value& arg = row.vals[aIdx];
        std::int64_t nn = 0;
        Rational s;
        if (!arg.isNull()) {
            nn = mult;
            if (f == AggFunc::Sum || f == AggFunc::Avg) {
                if (!arg.isNumeric())
                    throw ContractError("non-numeric aggregate argument");
                s = arg.toRational() * Rational(mult);
            }
        }
        auto& group = events[projectKey(row.vals, gIdx)];
        Delta& db = group[row.begin];
        db.total += mult;
        db.nonNull += nn;
        db.sum = db.sum + s;
        Delta& de = group[row.end];
        de.total -= mult;
        de.nonNull -= nn;
        de.sum = de.sum - s;
    }

    Schema out;
    out.attrs = groupBy;
    out.attrs.push_back(aggAttrName(f));
    SqlPeriodRelation result(out, child.domain());
    for (const auto& [key, evs] : events) {
        Delta run;
        Tick prev = 0;
        bool started = false;
        for (const auto& [t, d] : evs) {
            if (started && run.total > 0 && prev < t) {
                Value agg;
                switch (f) {
                case AggFunc::Count:
                    agg = Value(run.nonNull);
                    break;
                case AggFunc::Sum:
                    agg = run.nonNull ? canonRational(run.sum) : Value::null();
                    break;
                case AggFunc::Avg:
                    agg = run.nonNull
                              ? canonRational(run.sum / Rational(run.nonNull))
                              : Value::null();
                    break;
                default:
                    throw ContractError("unexpected aggregate in sweep");
                }
                Tuple row = key;
                row.push_back(agg);
                result.add(Row{row, prev, t}, 1);
            }
            run.total += d.total;
            run.nonNull += d.nonNull;
            run.sum = run.sum + d.sum;
            prev = t;
            started = true;
        }
    }
    return result;
}

namespace {

PhysPtr node(PhysPlan p) { return std::make_shared<PhysPlan>(std::move(p)); }

PhysPtr coalesceOf(PhysPtr child) {
    PhysPlan p;
    p.kind = PhysPlan::Kind::CoalesceP;
    p.left = std::move(child);
    return node(std::move(p));
}

PhysPtr rewriteNode(const QueryPtr& q) {
    switch (q->kind) {
    case Query::Kind::Rel: {
        PhysPlan p;
        p.kind = PhysPlan::Kind::Scan;
        p.relName = q->relName;
        return node(std::move(p));
    }
    case Query::Kind::Select: {
        PhysPlan p;
        p.kind = PhysPlan::Kind::SelectP;
        p.pred = q->pred;
        p.left = rewriteNode(q->left);
        return coalesceOf(node(std::move(p)));
    }
    case Query::Kind::Project: {
        PhysPlan p;
        p.kind = PhysPlan::Kind::ProjectP;
        p.items = q->items;
        p.left = rewriteNode(q->left);
        return coalesceOf(node(std::move(p)));
    }
    case Query::Kind::Join: {
        PhysPlan p;
        p.kind = PhysPlan::Kind::JoinP;
        p.pred = q->pred;
        p.left = rewriteNode(q->left);
        p.right = rewriteNode(q->right);
        return coalesceOf(node(std::move(p)));
    }
    case Query::Kind::Union: {
        PhysPlan p;
        p.kind = PhysPlan::Kind::UnionP;
        p.left = rewriteNode(q->left);
        p.right = rewriteNode(q->right);
        return coalesceOf(node(std::move(p)));
    }
    case Query::Kind::Diff: {
        PhysPlan p;
        p.kind = PhysPlan::Kind::DiffP;
        p.left = rewriteNode(q->left);
        p.right = rewriteNode(q->right);
        return coalesceOf(node(std::move(p)));
    }
    case Query::Kind::Agg: {
        PhysPlan p;
        p.kind = PhysPlan::Kind::AggP;
        p.groupBy = q->groupBy;
        p.func = q->func;
        p.argAttr = q->argAttr;
        p.left = rewriteNode(q->left);
        if (q->func == AggFunc::CountStar) {
            // count(*) -> count(A) over a projected constant column.
            PhysPlan proj;
            proj.kind = PhysPlan::Kind::ProjectP;
            for (const auto& g : q->groupBy)
                proj.items.push_back(ProjItem::attr(g));
            proj.items.push_back(
                ProjItem::constant(Value(std::int64_t(1)), "count_arg"));
            proj.left = p.left;
            p.left = coalesceOf(node(std::move(proj)));
            p.func = AggFunc::Count;
            p.argAttr = "count_arg";
        }
        return coalesceOf(node(std::move(p)));
    }
    }
    throw ContractError("malformed query node");
}

PhysPtr stripCoalesce(const PhysPtr& p) {
    if (p->kind == PhysPlan::Kind::CoalesceP)
        return stripCoalesce(p->left);
    PhysPlan copy = *p;
    if (copy.left)
        copy.left = stripCoalesce(copy.left);
    if (copy.right)
        copy.right = stripCoalesce(copy.right);
    return node(std::move(copy));
}

} // namespace

PhysPtr rewrite(const QueryPtr& q, bool pullUp) {
    PhysPtr plan = rewriteNode(q);
    if (pullUp)
        plan = coalesceOf(stripCoalesce(plan));
    return plan;
}

namespace {

SqlPeriodRelation evalPhys(const PhysPtr& p,
                           const std::map<std::string, SqlPeriodRelation>& db,
                           const TimeDomain& dom) {
    switch (p->kind) {
    case PhysPlan::Kind::Scan: {
        auto it = db.find(p->relName);
        if (it == db.end())
            throw ContractError("unknown relation: " + p->relName);
        return it->second;
    }
    case PhysPlan::Kind::SelectP: {
        SqlPeriodRelation c = evalPhys(p->left, db, dom);
        SqlPeriodRelation out(c.schema(), c.domain());
        for (const auto& [row, mult] : c.rows()) {
            if (evalPredicate(*p->pred, c.schema(), row.vals))
                out.add(row, mult);
        }
        return out;
    }
    case PhysPlan::Kind::ProjectP: {
        SqlPeriodRelation c = evalPhys(p->left, db, dom);
        Schema s;
        for (const auto& item : p->items)
            s.attrs.push_back(item.out);
        SqlPeriodRelation out(s, c.domain());
        for (const auto& [row, mult] : c.rows()) {
            Tuple vals;
            for (const auto& item : p->items) {
                vals.push_back(item.kind == ProjItem::Kind::Attr
                                   ? row.vals[c.schema().indexOf(item.src)]
                                   : item.lit);
            }
            out.add(Row{vals, row.begin, row.end}, mult);
        }
        return out;
    }
    case PhysPlan::Kind::JoinP: {
        SqlPeriodRelation l = evalPhys(p->left, db, dom);
        SqlPeriodRelation r = evalPhys(p->right, db, dom);
        Schema s = l.schema();
        s.attrs.insert(s.attrs.end(), r.schema().attrs.begin(),
                       r.schema().attrs.end());
        SqlPeriodRelation out(s, l.domain());
        for (const auto& [lr, lm] : l.rows()) {
            for (const auto& [rr, rm] : r.rows()) {
                if (lr.begin >= rr.end || rr.begin >= lr.end)
                    continue;
                Tuple vals = lr.vals;
                vals.insert(vals.end(), rr.vals.begin(), rr.vals.end());
                if (!evalPredicate(*p->pred, s, vals))
                    continue;
                out.add(Row{vals, std::max(lr.begin, rr.begin),
                            std::min(lr.end, rr.end)},
                        mulChecked(lm, rm));
            }
        }
        return out;
    }
    case PhysPlan::Kind::UnionP: {
        SqlPeriodRelation l = evalPhys(p->left, db, dom);
        SqlPeriodRelation r = evalPhys(p->right, db, dom);
        if (l.schema().arity() != r.schema().arity())
            throw ContractError("union-incompatible operands");
        SqlPeriodRelation out = l;
        for (const auto& [row, mult] : r.rows())
            out.add(row, mult);
        return out;
    }
    case PhysPlan::Kind::DiffP:
        return splitDiffCount(evalPhys(p->left, db, dom),
                              evalPhys(p->right, db, dom));
    case PhysPlan::Kind::AggP:
        return splitAggSweep(p->groupBy, p->func, p->argAttr,
                             evalPhys(p->left, db, dom), dom);
    case PhysPlan::Kind::CoalesceP:
        return coalesceOpC(evalPhys(p->left, db, dom));
    }
    throw ContractError("malformed physical plan");
}

} // namespace

SqlPeriodRelation evalPhysical(const PhysPtr& plan,
                               const std::map<std::string, SqlPeriodRelation>& db) {
    if (db.empty())
        throw ContractError("empty catalog");
    TimeDomain dom = db.begin()->second.domain();
    for (const auto& [name, rel] : db) {
        if (rel.domain() != dom)
            throw ContractError("catalog relations disagree on time domain");
    }
    return evalPhys(plan, db, dom);
}

} // namespace tqe
