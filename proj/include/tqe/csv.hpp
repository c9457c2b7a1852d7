#ifndef TQE_CSV_HPP
#define TQE_CSV_HPP

#include "tqe/relation.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tqe {

/// Declared column type for CSV ingestion. Undeclared columns are Str.
enum class ColType { Str, Int, Rat };

/// A parsed CSV period table before the time domain is fixed: raw rows
/// plus the observed tick extent (used for domain inference).
struct CsvTable {
    Schema schema; // data columns, period columns stripped
    std::vector<ColType> types;
    struct RawRow {
        Tuple vals;
        Tick begin;
        Tick end;
    };
    std::vector<RawRow> rows;
    Tick minBegin = 0;
    Tick maxEnd = 0;
    bool hasRows = false;
};

/// Parses CSV text. Header required; begin/end columns are stripped
/// from the data schema. Errors carry 1-based row numbers.
CsvTable parseCsv(const std::string& text, const std::string& beginCol,
                  const std::string& endCol,
                  const std::map<std::string, ColType>& colTypes);

/// Reads and parses a CSV file.
CsvTable loadCsvFile(const std::string& path, const std::string& beginCol,
                     const std::string& endCol,
                     const std::map<std::string, ColType>& colTypes);

/// Fixes the time domain: duplicate rows accumulate multiplicity.
SqlPeriodRelation toRelation(const CsvTable& table, const TimeDomain& dom);

/// Canonical CSV output: header, then rows sorted by data values and
/// period, duplicates materialized, period columns last as
/// t_begin,t_end. Rationals render at `precision` decimals.
void writeCsv(std::ostream& os, const SqlPeriodRelation& r, int precision = 4);

} // namespace tqe

#endif
