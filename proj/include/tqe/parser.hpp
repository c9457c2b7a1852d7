#ifndef TQE_PARSER_HPP
#define TQE_PARSER_HPP

#include "tqe/algebra.hpp"

#include <string>

namespace tqe {

/// Syntax error with 1-based line/column position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Parses one query in the s-expression DSL:
///   E     := (rel NAME) | (select PRED E) | (project (PEXPR...) E)
///          | (join PRED E E) | (union E E) | (diff E E)
///          | (agg (ATTR...) (FUNC [ATTR|*]) E)
///   PEXPR := ATTR | (-> LIT ATTR) | (-> ATTR ATTR)
///   PRED  := (cmp OP ATTR (ATTR|LIT)) | (and PRED...) | (or PRED...)
///   OP    := = | <> | < | <= | > | >=
///   FUNC  := count | sum | avg | min | max
/// Literals are integers, decimals (exact rationals), or "strings".
QueryPtr parseQuery(const std::string& text);

} // namespace tqe

#endif
