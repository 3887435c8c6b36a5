#include "adist/expr.hpp"

namespace adist {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;
    unsigned line = 1;
    unsigned col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') { ++line; col = 1; }
            else ++col;
            ++pos;
        }
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
            advance();
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    /// raw peek without skipping whitespace (for glued suffixes like e<2>)
    char glued() const { return pos < text.size() ? text[pos] : '\0'; }

    bool accept(char c) {
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!accept(c)) fail("expected '" + std::string(1, c) + "' (" + what + ")");
    }

    mpz_class read_integer() {
        skip_ws();
        std::string digits;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            digits += text[pos];
            advance();
        }
        if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected an integer");
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
            digits += text[pos];
            advance();
        }
        return mpz_class(digits);
    }

    std::string read_ident() {
        skip_ws();
        std::string s;
        while (pos < text.size() &&
               (isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '\'')) {
            s += text[pos];
            advance();
        }
        if (s.empty()) fail("expected an identifier");
        return s;
    }
};

struct Parser {
    Lexer lx;

    explicit Parser(const std::string& t) : lx(t) {}

    Expr parse_expr() {
        Expr sum;
        sum.kind = Expr::Kind::sum;
        bool lead_minus = lx.accept('-');
        Expr first = parse_term();
        if (lead_minus) {
            Expr neg;
            neg.kind = Expr::Kind::negate;
            neg.children.push_back(std::move(first));
            first = std::move(neg);
        }
        sum.children.push_back(std::move(first));
        while (true) {
            if (lx.accept('+')) {
                sum.children.push_back(parse_term());
            } else if (lx.accept('-')) {
                Expr neg;
                neg.kind = Expr::Kind::negate;
                neg.children.push_back(parse_term());
                sum.children.push_back(std::move(neg));
            } else
                break;
        }
        if (sum.children.size() == 1) return std::move(sum.children[0]);
        return sum;
    }

    Expr parse_term() {
        Expr prod;
        prod.kind = Expr::Kind::prod;
        prod.children.push_back(parse_factor());
        while (true) {
            if (lx.accept('*')) {
                prod.children.push_back(parse_factor());
            } else if (lx.peek() == '/') {
                lx.advance();
                Expr quot;
                quot.kind = Expr::Kind::quot;
                quot.children.push_back(prod.children.size() == 1 ? std::move(prod.children[0])
                                                                  : std::move(prod));
                quot.children.push_back(parse_factor());
                prod = Expr{};
                prod.kind = Expr::Kind::prod;
                prod.children.push_back(std::move(quot));
            } else
                break;
        }
        if (prod.children.size() == 1) return std::move(prod.children[0]);
        return prod;
    }

    Expr parse_factor() {
        Expr atom = parse_atom();
        if (lx.peek() == '^') {
            lx.advance();
            mpz_class e = lx.read_integer();
            if (atom.kind == Expr::Kind::coord) {
                if (!e.fits_slong_p()) lx.fail("coordinate exponent out of range");
                atom.coord_exp = e.get_si();
                return atom;
            }
            if (e < 0) lx.fail("negative exponent on a non-coordinate atom");
            Expr pw;
            pw.kind = Expr::Kind::power;
            pw.pow_exp = static_cast<std::uint32_t>(e.get_ui());
            pw.children.push_back(std::move(atom));
            return pw;
        }
        return atom;
    }

    Expr parse_atom() {
        char c = lx.peek();
        if (c == '(') {
            lx.advance();
            Expr e = parse_expr();
            lx.expect(')', "closing parenthesis");
            return e;
        }
        if (c == '[') {
            lx.advance();
            Expr br;
            br.kind = Expr::Kind::bracket;
            br.children.push_back(parse_expr());
            lx.expect(',', "bracket separator");
            br.children.push_back(parse_expr());
            lx.expect(']', "closing bracket");
            return br;
        }
        if (isdigit(static_cast<unsigned char>(c))) {
            Expr s;
            s.kind = Expr::Kind::scalar;
            s.num = lx.read_integer();
            if (lx.glued() == '!') {
                lx.advance();
                if (s.num < 0 || !s.num.fits_ulong_p()) lx.fail("factorial of an invalid literal");
                s.num = factorial(s.num.get_ui());
            }
            return s;
        }
        if (isalpha(static_cast<unsigned char>(c))) {
            std::string ident = lx.read_ident();
            if (ident == "binom") {
                // binom(h, k) is the [k]-style binomial generator
                lx.expect('(', "binom argument list");
                std::string gen = lx.read_ident();
                lx.expect(',', "binom separator");
                mpz_class k = lx.read_integer();
                lx.expect(')', "closing binom");
                if (k < 0 || !k.fits_ulong_p()) lx.fail("binom index out of range");
                Expr g;
                g.kind = Expr::Kind::generator;
                g.label = gen;
                g.style = PowerStyle::square;
                g.gen_exp = static_cast<std::uint32_t>(k.get_ui());
                return g;
            }
            if (ident == "t" || ident == "T") {
                Expr co;
                co.kind = Expr::Kind::coord;
                co.coord_exp = 1;
                return co;
            }
            Expr g;
            g.kind = Expr::Kind::generator;
            g.label = ident;
            // glued basis suffix: <k> or [k]
            if (lx.glued() == '<') {
                lx.advance();
                mpz_class k = lx.read_integer();
                lx.expect('>', "closing divided-power index");
                if (k < 0 || !k.fits_ulong_p()) lx.fail("divided-power index out of range");
                g.style = PowerStyle::angle;
                g.gen_exp = static_cast<std::uint32_t>(k.get_ui());
            } else if (lx.glued() == '[') {
                lx.advance();
                mpz_class k = lx.read_integer();
                lx.expect(']', "closing basis index");
                if (k < 0 || !k.fits_ulong_p()) lx.fail("basis index out of range");
                g.style = PowerStyle::square;
                g.gen_exp = static_cast<std::uint32_t>(k.get_ui());
            }
            return g;
        }
        lx.fail("expected an atom");
    }

    Expr run() {
        if (lx.eof()) lx.fail("empty expression");
        Expr e = parse_expr();
        if (!lx.eof()) lx.fail("trailing input");
        return e;
    }
};

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

// ---- evaluation --------------------------------------------------------------

namespace {

// scalar extraction: an element that is c * unit
std::optional<ValuedRational> as_scalar_dist(const DistElement& u) {
    if (u.is_zero()) return ValuedRational(u.ctx().p.value());
    if (u.terms().size() != 1) return std::nullopt;
    auto& [k, c] = *u.terms().begin();
    if (k.total() != 0) return std::nullopt;
    return c;
}

std::optional<ValuedRational> as_scalar_op(const DiffOp& P) {
    if (P.is_zero()) return ValuedRational(P.ctx().p.value());
    if (P.terms().size() != 1) return std::nullopt;
    auto& [jk, c] = *P.terms().begin();
    if (jk.first != 0 || jk.second != 0) return std::nullopt;
    return c;
}

}  // namespace

DistElement eval_dist(const Expr& e, const Group& g, const LevelContext& ctx) {
    const unsigned long p = ctx.p.value();
    switch (e.kind) {
        case Expr::Kind::scalar:
            return DistElement::unit(g, ctx).scaled(ValuedRational(p, e.num, e.den));
        case Expr::Kind::generator: {
            WordFactor w{e.label, e.gen_exp, e.style};
            return normalize(std::span<const WordFactor>(&w, 1), ValuedRational(p, 1), g, ctx);
        }
        case Expr::Kind::coord:
            throw std::invalid_argument("eval_dist: coordinate monomials are not distributions");
        case Expr::Kind::sum: {
            DistElement r = DistElement::zero(g, ctx);
            for (auto& c : e.children) r += eval_dist(c, g, ctx);
            return r;
        }
        case Expr::Kind::prod: {
            DistElement r = DistElement::unit(g, ctx);
            for (auto& c : e.children) r = mul(r, eval_dist(c, g, ctx));
            return r;
        }
        case Expr::Kind::quot: {
            DistElement lhs = eval_dist(e.children[0], g, ctx);
            auto s = as_scalar_dist(eval_dist(e.children[1], g, ctx));
            if (!s || s->is_zero())
                throw std::invalid_argument("eval_dist: division is by nonzero scalars only");
            return lhs.scaled(s->inverse());
        }
        case Expr::Kind::bracket:
            return commutator(eval_dist(e.children[0], g, ctx), eval_dist(e.children[1], g, ctx));
        case Expr::Kind::power: {
            DistElement base = eval_dist(e.children[0], g, ctx);
            DistElement r = DistElement::unit(g, ctx);
            for (std::uint32_t i = 0; i < e.pow_exp; ++i) r = mul(r, base);
            return r;
        }
        case Expr::Kind::negate:
            return -eval_dist(e.children[0], g, ctx);
    }
    throw std::logic_error("eval_dist: unreachable");
}

DiffOp eval_diffop(const Expr& e, const Chart& chart, const LevelContext& ctx) {
    const unsigned long p = ctx.p.value();
    switch (e.kind) {
        case Expr::Kind::scalar:
            return DiffOp::unit(ctx, chart).scaled(ValuedRational(p, e.num, e.den));
        case Expr::Kind::generator: {
            if (e.label != "d")
                throw std::invalid_argument("eval_diffop: unknown operator generator '" + e.label +
                                            "'");
            if (e.style == PowerStyle::square) {
                // d[k] = d^k / k! = d^<k> / q_k!
                return DiffOp::term(ctx, chart, 0, e.gen_exp,
                                    factorial_ratio({}, {q_of(e.gen_exp, ctx)}, ctx.p));
            }
            if (e.style == PowerStyle::angle)
                return DiffOp::term(ctx, chart, 0, e.gen_exp, ValuedRational(p, 1));
            // plain power d^k = (k!/q_k!) d^<k>
            return DiffOp::term(ctx, chart, 0, e.gen_exp,
                                factorial_ratio({e.gen_exp}, {q_of(e.gen_exp, ctx)}, ctx.p));
        }
        case Expr::Kind::coord:
            return DiffOp::term(ctx, chart, e.coord_exp, 0, ValuedRational(p, 1));
        case Expr::Kind::sum: {
            DiffOp r = DiffOp::zero(ctx, chart);
            for (auto& c : e.children) r += eval_diffop(c, chart, ctx);
            return r;
        }
        case Expr::Kind::prod: {
            DiffOp r = DiffOp::unit(ctx, chart);
            for (auto& c : e.children) r = compose(r, eval_diffop(c, chart, ctx));
            return r;
        }
        case Expr::Kind::quot: {
            DiffOp lhs = eval_diffop(e.children[0], chart, ctx);
            auto s = as_scalar_op(eval_diffop(e.children[1], chart, ctx));
            if (!s || s->is_zero())
                throw std::invalid_argument("eval_diffop: division is by nonzero scalars only");
            return lhs.scaled(s->inverse());
        }
        case Expr::Kind::bracket:
            return op_commutator(eval_diffop(e.children[0], chart, ctx),
                                 eval_diffop(e.children[1], chart, ctx));
        case Expr::Kind::power: {
            DiffOp base = eval_diffop(e.children[0], chart, ctx);
            return op_pow(base, e.pow_exp);
        }
        case Expr::Kind::negate:
            return -eval_diffop(e.children[0], chart, ctx);
    }
    throw std::logic_error("eval_diffop: unreachable");
}

}  // namespace adist
