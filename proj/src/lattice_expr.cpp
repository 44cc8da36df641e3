#include "lattice_expr.hpp"

#include <cctype>
#include <map>
#include <utility>

#include "error.hpp"

namespace ql {

namespace {

IMat cartan(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
    for (auto [i, j] : edges) {
        m(i, j) = -1;
        m(j, i) = -1;
    }
    return m;
}

IMat chain(std::size_t n) {
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return cartan(n, e);
}

const std::map<std::string, IMat>& atoms() {
    // E_n: nodes 0,2,3,...,n-1 form a chain, node 1 hangs off node 3
    static const std::map<std::string, IMat> table = {
        {"U", IMat{{0, 1}, {1, 0}}},
        {"A2", chain(2)},
        {"A4", chain(4)},
        {"E6", cartan(6, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}})},
        {"E8", cartan(8, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}})},
        {"L17", IMat{{-2, 1, 0, 1}, {1, -2, 0, 0}, {0, 0, -2, 1}, {1, 0, 1, -4}}},
        {"K7", IMat{{-4, 1}, {1, -2}}},
        {"K19", IMat{{-10, 1}, {1, -2}}},
        {"H5", IMat{{2, 1}, {1, -2}}},
    };
    return table;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    GramLattice parse() {
        std::vector<IMat> terms;
        skip();
        if (eof()) throw ParseError(pos_, "empty lattice expression");
        terms.push_back(term());
        skip();
        while (!eof()) {
            if (peek() != '+') throw ParseError(pos_, std::string("unexpected '") + peek() + "'");
            ++pos_;
            terms.push_back(term());
            skip();
        }
        return GramLattice(block_diag(terms), s_);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    void expect(char c) {
        skip();
        if (eof() || peek() != c) throw ParseError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    Int integer() {
        skip();
        std::size_t start = pos_;
        if (!eof() && (peek() == '-' || peek() == '+')) ++pos_;
        std::size_t digits = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == digits) throw ParseError(start, "expected an integer");
        return Int(s_.substr(start, pos_ - start));
    }

    QMat literal() {
        std::size_t start = pos_;
        expect('[');
        std::vector<IVec> rows;
        do {
            expect('[');
            IVec row;
            do row.push_back(integer());
            while (accept(','));
            expect(']');
            rows.push_back(std::move(row));
        } while (accept(','));
        expect(']');
        for (const auto& r : rows)
            if (r.size() != rows.size()) throw ParseError(start, "matrix literal is not square");
        return to_rational(rows_to_matrix(rows, rows.size()));
    }

    bool accept(char c) {
        skip();
        if (!eof() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    IMat term() {
        skip();
        std::size_t start = pos_;
        QMat m;
        if (eof()) throw ParseError(pos_, "expected a lattice atom");
        if (peek() == '(') {
            ++pos_;
            Int v = integer();
            expect(')');
            m = QMat(1, 1);
            m(0, 0) = v;
        } else if (peek() == '[') {
            m = literal();
        } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
            std::size_t b = pos_;
            while (!eof() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
            std::string name = s_.substr(b, pos_ - b);
            auto it = atoms().find(name);
            if (it == atoms().end()) throw ParseError(b, "unknown lattice '" + name + "'");
            m = to_rational(it->second);
        } else {
            throw ParseError(pos_, std::string("unexpected '") + peek() + "'");
        }
        for (;;) {
            skip();
            if (eof()) break;
            if (peek() == '(') {
                ++pos_;
                Int f = integer();
                expect(')');
                if (sgn(f) == 0) throw ParseError(pos_, "rescaling by zero");
                m = scaled(m, Rat(f));
            } else if (peek() == '*') {
                ++pos_;
                m = inverse(m);
            } else if (peek() == '^') {
                ++pos_;
                std::size_t at = pos_;
                Int k = integer();
                if (k < 1 || k > 64) throw ParseError(at, "repetition count out of range");
                QMat rep(m.rows * k.get_ui(), m.cols * k.get_ui());
                for (std::size_t c = 0; c < k.get_ui(); ++c)
                    for (std::size_t i = 0; i < m.rows; ++i)
                        for (std::size_t j = 0; j < m.cols; ++j) rep(c * m.rows + i, c * m.cols + j) = m(i, j);
                m = std::move(rep);
            } else {
                break;
            }
        }
        if (!is_integral(m)) throw ParseError(start, "term does not have an integral Gram matrix");
        return to_integer(m);
    }
};

}  // namespace

GramLattice parse_lattice_expr(const std::string& text) { return Parser(text).parse(); }

IMat named_lattice(const std::string& name) {
    auto it = atoms().find(name);
    if (it == atoms().end()) fail(Errc::NotFound, "unknown lattice '" + name + "'");
    return it->second;
}

std::vector<std::string> named_lattices() {
    std::vector<std::string> v;
    for (const auto& [k, _] : atoms()) v.push_back(k);
    return v;
}

}  // namespace ql
