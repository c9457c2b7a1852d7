#include "tqe/csv.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tqe {

namespace {

/// One record, honoring double-quote escaping; advances past the
/// terminating newline. Returns false at end of input.
bool readRecord(const std::string& text, std::size_t& pos,
                std::vector<std::string>& fields) {
    fields.clear();
    if (pos >= text.size())
        return false;
    std::string cur;
    bool quoted = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    cur.push_back('"');
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n')
                ++pos;
            ++pos;
            break;
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return true;
}

Value parseField(const std::string& s, ColType type, int rowNum,
                 const std::string& col) {
    try {
        switch (type) {
        case ColType::Str:
            return Value(s);
        case ColType::Int: {
            std::size_t used = 0;
            std::int64_t v = std::stoll(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return Value(v);
        }
        case ColType::Rat: {
            auto dot = s.find('.');
            if (dot == std::string::npos) {
                std::size_t used = 0;
                std::int64_t v = std::stoll(s, &used);
                if (used != s.size())
                    throw std::invalid_argument(s);
                return Value(Rational(v));
            }
            std::string frac = s.substr(dot + 1);
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                den *= 10;
            std::size_t used = 0;
            std::string digits = s.substr(0, dot) + frac;
            std::int64_t whole = std::stoll(digits, &used);
            if (used != digits.size())
                throw std::invalid_argument(s);
            return Value(Rational(whole, den));
        }
        }
    } catch (const std::exception&) {
        throw ContractError("row " + std::to_string(rowNum) +
                            ": cannot parse '" + s + "' for column " + col);
    }
    throw ContractError("unreachable");
}

Tick parseTick(const std::string& s, int rowNum, const std::string& col) {
    try {
        std::size_t used = 0;
        Tick v = std::stoll(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ContractError("row " + std::to_string(rowNum) +
                            ": cannot parse tick '" + s + "' in column " + col);
    }
}

std::string quoteField(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

CsvTable parseCsv(const std::string& text, const std::string& beginCol,
                  const std::string& endCol,
                  const std::map<std::string, ColType>& colTypes) {
    std::size_t pos = 0;
    std::vector<std::string> fields;
    if (!readRecord(text, pos, fields))
        throw ContractError("missing CSV header");
    CsvTable table;
    std::ptrdiff_t beginIdx = -1, endIdx = -1;
    std::vector<std::size_t> dataIdx;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == beginCol) {
            beginIdx = (std::ptrdiff_t)i;
        } else if (fields[i] == endCol) {
            endIdx = (std::ptrdiff_t)i;
        } else {
            dataIdx.push_back(i);
            table.schema.attrs.push_back(fields[i]);
            auto it = colTypes.find(fields[i]);
            table.types.push_back(it == colTypes.end() ? ColType::Str
                                                       : it->second);
        }
    }
    if (beginIdx < 0)
        throw ContractError("missing begin column '" + beginCol + "'");
    if (endIdx < 0)
        throw ContractError("missing end column '" + endCol + "'");

    int rowNum = 1;
    while (readRecord(text, pos, fields)) {
        ++rowNum;
        if (fields.size() == 1 && fields[0].empty())
            continue; // trailing blank line
        if (fields.size() != dataIdx.size() + 2)
            throw ContractError("row " + std::to_string(rowNum) +
                                ": expected " +
                                std::to_string(dataIdx.size() + 2) +
                                " fields, got " +
                                std::to_string(fields.size()));
        CsvTable::RawRow row;
        for (std::size_t i = 0; i < dataIdx.size(); ++i) {
            const std::string& f = fields[dataIdx[i]];
            if (f.empty() && table.types[i] != ColType::Str)
                row.vals.push_back(Value::null());
            else
                row.vals.push_back(parseField(f, table.types[i], rowNum,
                                              table.schema.attrs[i]));
        }
        row.begin = parseTick(fields[(std::size_t)beginIdx], rowNum, beginCol);
        row.end = parseTick(fields[(std::size_t)endIdx], rowNum, endCol);
        if (row.begin >= row.end)
            throw ContractError("row " + std::to_string(rowNum) +
                                ": begin >= end");
        if (!table.hasRows) {
            table.minBegin = row.begin;
            table.maxEnd = row.end;
            table.hasRows = true;
        } else {
            table.minBegin = std::min(table.minBegin, row.begin);
            table.maxEnd = std::max(table.maxEnd, row.end);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable loadCsvFile(const std::string& path, const std::string& beginCol,
                     const std::string& endCol,
                     const std::map<std::string, ColType>& colTypes) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ContractError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseCsv(ss.str(), beginCol, endCol, colTypes);
}

SqlPeriodRelation toRelation(const CsvTable& table, const TimeDomain& dom) {
    SqlPeriodRelation out(table.schema, dom);
    int rowNum = 1;
    for (const auto& row : table.rows) {
        ++rowNum;
        if (row.begin < dom.tmin || row.end > dom.tmax)
            throw RangeError("row " + std::to_string(rowNum) +
                             ": period outside time domain");
        out.add(Row{row.vals, row.begin, row.end}, 1);
    }
    return out;
}

void writeCsv(std::ostream& os, const SqlPeriodRelation& r, int precision) {
    for (const auto& a : r.schema().attrs)
        os << quoteField(a) << ",";
    os << "t_begin,t_end\n";
    for (const auto& [row, mult] : r.rows()) {
        std::string line;
        for (const auto& v : row.vals) {
            line += v.isString() ? quoteField(v.asString())
                                 : v.toString(precision);
            line += ",";
        }
        line += std::to_string(row.begin) + "," + std::to_string(row.end) + "\n";
        for (std::int64_t i = 0; i < mult; ++i)
            os << line;
    }
}

} // namespace tqe
