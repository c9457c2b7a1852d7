#include "tqe/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

namespace tqe {

namespace {

struct Token {
    enum class Kind { LParen, RParen, Atom, Str, Num, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skipSpace();
        int line = line_, col = col_;
        if (pos_ >= text_.size())
            return {Token::Kind::End, "", line, col};
        char c = text_[pos_];
        if (c == '(') {
            advance();
            return {Token::Kind::LParen, "(", line, col};
        }
        if (c == ')') {
            advance();
            return {Token::Kind::RParen, ")", line, col};
        }
        if (c == '"') {
            advance();
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size())
                    advance();
                s.push_back(text_[pos_]);
                advance();
            }
            if (pos_ >= text_.size())
                throw ParseError("unterminated string", line, col);
            advance();
            return {Token::Kind::Str, s, line, col};
        }
        std::string s;
        while (pos_ < text_.size() && !std::isspace((unsigned char)text_[pos_]) &&
               text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '"') {
            s.push_back(text_[pos_]);
            advance();
        }
        bool num = (s[0] == '-' && s.size() > 1 &&
                    std::isdigit((unsigned char)s[1])) ||
                   std::isdigit((unsigned char)s[0]);
        return {num ? Token::Kind::Num : Token::Kind::Atom, s, line, col};
    }

private:
    void skipSpace() {
        while (pos_ < text_.size() &&
               std::isspace((unsigned char)text_[pos_]))
            advance();
    }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Node {
    bool isList = false;
    std::vector<Node> kids;
    Token tok; // atom/str/num payload, or the '(' of a list
};

Node parseNode(Lexer& lex, Token tok) {
    if (tok.kind == Token::Kind::End)
        throw ParseError("unexpected end of input", tok.line, tok.col);
    if (tok.kind == Token::Kind::RParen)
        throw ParseError("unexpected ')'", tok.line, tok.col);
    if (tok.kind != Token::Kind::LParen) {
        Node n;
        n.tok = tok;
        return n;
    }
    Node n;
    n.isList = true;
    n.tok = tok;
    for (;;) {
        Token t = lex.next();
        if (t.kind == Token::Kind::RParen)
            return n;
        if (t.kind == Token::Kind::End)
            throw ParseError("missing ')'", t.line, t.col);
        n.kids.push_back(parseNode(lex, t));
    }
}

[[noreturn]] void fail(const Node& n, const std::string& msg) {
    throw ParseError(msg, n.tok.line, n.tok.col);
}

bool isAtom(const Node& n) {
    return !n.isList && n.tok.kind == Token::Kind::Atom;
}

std::string atomOf(const Node& n, const std::string& what) {
    if (!isAtom(n))
        fail(n, "expected " + what);
    return n.tok.text;
}

Value literalOf(const Node& n) {
    if (n.tok.kind == Token::Kind::Str)
        return Value(n.tok.text);
    const std::string& s = n.tok.text;
    auto dot = s.find('.');
    if (dot == std::string::npos)
        return Value((std::int64_t)std::stoll(s));
    std::string frac = s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        den *= 10;
    std::int64_t whole = (std::int64_t)std::stoll(s.substr(0, dot) + frac);
    return Value(Rational(whole, den));
}

bool isLiteral(const Node& n) {
    return !n.isList && (n.tok.kind == Token::Kind::Str ||
                         n.tok.kind == Token::Kind::Num);
}

CmpOp cmpOpOf(const Node& n) {
    std::string s = atomOf(n, "comparison operator");
    if (s == "=") return CmpOp::Eq;
    if (s == "<>") return CmpOp::Ne;
    if (s == "<") return CmpOp::Lt;
    if (s == "<=") return CmpOp::Le;
    if (s == ">") return CmpOp::Gt;
    if (s == ">=") return CmpOp::Ge;
    fail(n, "unknown comparison operator '" + s + "'");
}

PredPtr toPred(const Node& n) {
    if (!n.isList || n.kids.empty())
        fail(n, "expected predicate");
    std::string head = atomOf(n.kids[0], "predicate head");
    if (head == "cmp") {
        if (n.kids.size() != 4)
            fail(n, "cmp takes an operator, an attribute, and a value");
        CmpOp op = cmpOpOf(n.kids[1]);
        std::string lhs = atomOf(n.kids[2], "attribute");
        const Node& rhs = n.kids[3];
        if (isLiteral(rhs))
            return Predicate::cmpLit(op, lhs, literalOf(rhs));
        return Predicate::cmpAttr(op, lhs, atomOf(rhs, "attribute or literal"));
    }
    if (head == "and" || head == "or") {
        if (n.kids.size() < 2)
            fail(n, head + " needs at least one predicate");
        std::vector<PredPtr> kids;
        for (std::size_t i = 1; i < n.kids.size(); ++i)
            kids.push_back(toPred(n.kids[i]));
        return head == "and" ? Predicate::conj(std::move(kids))
                             : Predicate::disj(std::move(kids));
    }
    fail(n.kids[0], "unknown predicate '" + head + "'");
}

ProjItem toProjItem(const Node& n) {
    if (isAtom(n))
        return ProjItem::attr(n.tok.text);
    if (!n.isList || n.kids.size() != 3 || atomOf(n.kids[0], "->") != "->")
        fail(n, "expected ATTR, (-> LIT ATTR), or (-> ATTR ATTR)");
    std::string out = atomOf(n.kids[2], "output attribute");
    if (isLiteral(n.kids[1]))
        return ProjItem::constant(literalOf(n.kids[1]), out);
    return ProjItem::rename(atomOf(n.kids[1], "attribute or literal"), out);
}

QueryPtr toQuery(const Node& n) {
    if (!n.isList || n.kids.empty())
        fail(n, "expected query expression");
    std::string head = atomOf(n.kids[0], "query operator");
    auto arity = [&](std::size_t want, const char* usage) {
        if (n.kids.size() != want + 1)
            fail(n, std::string(head) + " takes " + usage);
    };
    if (head == "rel") {
        arity(1, "a relation name");
        return Query::rel(atomOf(n.kids[1], "relation name"));
    }
    if (head == "select") {
        arity(2, "a predicate and a query");
        return Query::select(toPred(n.kids[1]), toQuery(n.kids[2]));
    }
    if (head == "project") {
        arity(2, "a projection list and a query");
        if (!n.kids[1].isList)
            fail(n.kids[1], "expected projection list");
        std::vector<ProjItem> items;
        for (const Node& k : n.kids[1].kids)
            items.push_back(toProjItem(k));
        if (items.empty())
            fail(n.kids[1], "projection list is empty");
        return Query::project(std::move(items), toQuery(n.kids[2]));
    }
    if (head == "join") {
        arity(3, "a predicate and two queries");
        return Query::join(toPred(n.kids[1]), toQuery(n.kids[2]),
                           toQuery(n.kids[3]));
    }
    if (head == "union" || head == "diff") {
        arity(2, "two queries");
        QueryPtr l = toQuery(n.kids[1]);
        QueryPtr r = toQuery(n.kids[2]);
        return head == "union" ? Query::setUnion(l, r) : Query::diff(l, r);
    }
    if (head == "agg") {
        arity(3, "a group list, an aggregate, and a query");
        if (!n.kids[1].isList)
            fail(n.kids[1], "expected group attribute list");
        std::vector<std::string> groupBy;
        for (const Node& k : n.kids[1].kids)
            groupBy.push_back(atomOf(k, "group attribute"));
        const Node& fn = n.kids[2];
        if (!fn.isList || fn.kids.empty())
            fail(fn, "expected (FUNC [ATTR|*])");
        std::string fname = atomOf(fn.kids[0], "aggregate function");
        AggFunc f;
        if (fname == "count") f = AggFunc::Count;
        else if (fname == "sum") f = AggFunc::Sum;
        else if (fname == "avg") f = AggFunc::Avg;
        else if (fname == "min") f = AggFunc::Min;
        else if (fname == "max") f = AggFunc::Max;
        else fail(fn.kids[0], "unknown aggregate '" + fname + "'");
        std::string arg;
        if (fn.kids.size() == 2) {
            arg = atomOf(fn.kids[1], "aggregate argument");
            if (arg == "*") {
                if (f != AggFunc::Count)
                    fail(fn.kids[1], "'*' is only valid for count");
                f = AggFunc::CountStar;
                arg.clear();
            }
        } else if (fn.kids.size() != 1) {
            fail(fn, "aggregate takes at most one argument");
        } else if (f != AggFunc::CountStar) {
            fail(fn, "aggregate needs an argument attribute");
        }
        if (arg.empty() && f != AggFunc::CountStar)
            fail(fn, "aggregate needs an argument attribute");
        return Query::agg(std::move(groupBy), f, arg, toQuery(n.kids[3]));
    }
    fail(n.kids[0], "unknown query operator '" + head + "'");
}

} // namespace

QueryPtr parseQuery(const std::string& text) {
    Lexer lex(text);
    Token first = lex.next();
    Node root = parseNode(lex, first);
    Token rest = lex.next();
    if (rest.kind != Token::Kind::End)
        throw ParseError("trailing input after query", rest.line, rest.col);
    return toQuery(root);
}

} // namespace tqe
