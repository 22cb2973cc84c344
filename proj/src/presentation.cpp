#include "kdsg/presentation.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace kdsg {

int Presentation::generator_index(const std::string& n) const
{
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == n) return static_cast<int>(i);
    return -1;
}

int Presentation::degree(const Monomial& m) const
{
    int d = 0;
    for (int g : m.word) d += generators.at(static_cast<std::size_t>(g)).degree;
    return d;
}

int Presentation::max_generator_degree() const
{
    int d = 0;
    for (const auto& g : generators) d = std::max(d, g.degree);
    return d;
}

int Presentation::max_relation_degree() const
{
    int d = 0;
    for (const auto& r : relations)
        if (!r.terms.empty()) d = std::max(d, degree(r.terms.front().mono));
    return d;
}

const Presentation& Document::algebra(const std::string& name) const
{
    for (const auto& a : algebras)
        if (a.name == name) return a;
    throw std::invalid_argument("no algebra named '" + name + "'");
}

const MorphismSpec& Document::morphism(const std::string& name) const
{
    for (const auto& m : morphisms)
        if (m.name == name) return m;
    throw std::invalid_argument("no morphism named '" + name + "'");
}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::vector<Token> tokenize(const std::string& s)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), line, col});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, s.substr(i, j - i), line, col});
            advance(j - i);
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Punct, "->", line, col});
            advance(2);
        } else if (std::string(";:{},*^+-").find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), line, col});
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    Document document()
    {
        Document d;
        while (!at_end()) {
            const Token& t = peek();
            if (t.kind == Tok::Ident && t.text == "field") {
                next();
                d.field = field_name();
                expect(";");
            } else if (t.kind == Tok::Ident && t.text == "algebra") {
                next();
                Presentation p;
                p.name = ident("algebra name");
                for (const auto& a : d.algebras)
                    if (a.name == p.name) fail("duplicate algebra '" + p.name + "'", t);
                expect("{");
                body(p, "}");
                expect("}");
                d.algebras.push_back(std::move(p));
            } else if (t.kind == Tok::Ident && t.text == "morphism") {
                next();
                d.morphisms.push_back(morphism(d));
            } else {
                fail("expected 'field', 'algebra' or 'morphism'", t);
            }
        }
        return d;
    }

    Presentation bare_body(const std::string& name)
    {
        Presentation p;
        p.name = name;
        body(p, "");
        if (!at_end()) fail("unexpected trailing input", peek());
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool at_end() const { return peek().kind == Tok::End; }

    [[noreturn]] static void fail(const std::string& msg, const Token& t) { throw ParseError(msg, t.line, t.col); }

    bool is(const std::string& punct) const { return peek().kind == Tok::Punct && peek().text == punct; }

    void expect(const std::string& punct)
    {
        if (!is(punct)) fail("expected '" + punct + "'", peek());
        next();
    }

    std::string ident(const std::string& what)
    {
        if (peek().kind != Tok::Ident) fail("expected " + what, peek());
        return next().text;
    }

    long integer(const std::string& what)
    {
        if (peek().kind != Tok::Int) fail("expected " + what, peek());
        const Token& t = next();
        if (t.text.size() > 9) fail("integer too large", t);
        return std::stol(t.text);
    }

    void keyword(const std::string& kw)
    {
        if (peek().kind != Tok::Ident || peek().text != kw) fail("expected '" + kw + "'", peek());
        next();
    }

    std::string field_name()
    {
        const Token& t = peek();
        std::string name = ident("field name");
        if (name == "F" && peek().kind == Tok::Int) name += next().text;
        try {
            (void)Field::parse(name);
        } catch (const std::exception& e) {
            fail(e.what(), t);
        }
        return name;
    }

    void body(Presentation& p, const std::string& closer)
    {
        keyword("generators");
        expect(":");
        if (!is(";")) {
            do {
                const Token& t = peek();
                GeneratorSpec g;
                g.name = ident("generator name");
                if (p.generator_index(g.name) >= 0) fail("duplicate generator '" + g.name + "'", t);
                expect(":");
                const Token& dt = peek();
                g.degree = static_cast<int>(integer("generator degree"));
                if (g.degree < 1) fail("generator degrees must be positive", dt);
                p.generators.push_back(g);
            } while (is(",") && (next(), true));
        }
        expect(";");
        auto section_start = [&](const std::string& kw) {
            return peek().kind == Tok::Ident && peek().text == kw && toks_[pos_ + 1].kind == Tok::Punct &&
                   toks_[pos_ + 1].text == ":";
        };
        if (section_start("relations")) {
            next();
            next();
            if (!is(";")) {
                do {
                    const Token& t = peek();
                    Polynomial r = polynomial(p);
                    check_homogeneous(p, r, t);
                    p.relations.push_back(std::move(r));
                } while (is(",") && (next(), true));
            }
            expect(";");
        }
        if (section_start("commutativity")) {
            next();
            next();
            const Token& t = peek();
            std::string c = ident("'none' or 'graded'");
            if (c == "none")
                p.commutativity = Commutativity::None;
            else if (c == "graded")
                p.commutativity = Commutativity::Graded;
            else
                fail("expected 'none' or 'graded'", t);
            expect(";");
        }
        if (!closer.empty() && !is(closer)) fail("unexpected token '" + peek().text + "'", peek());
    }

    static void check_homogeneous(const Presentation& p, const Polynomial& r, const Token& where)
    {
        int d = -1;
        for (const auto& t : r.terms) {
            int e = p.degree(t.mono);
            if (d >= 0 && e != d) fail("inhomogeneous relation (degrees " + std::to_string(d) + " and " + std::to_string(e) + ")", where);
            d = e;
        }
    }

    Monomial monomial(const Presentation& p)
    {
        Monomial m;
        const Token& t = peek();
        std::string name = ident("generator");
        int g = p.generator_index(name);
        if (g < 0) fail("unknown generator '" + name + "'", t);
        if (is("^")) {
            next();
            const Token& et = peek();
            long e = integer("exponent");
            if (e < 1) fail("exponent must be positive", et);
            m.word.assign(static_cast<std::size_t>(e), g);
            m.power = true;
            return m;
        }
        m.word.push_back(g);
        while (is("*")) {
            next();
            const Token& ft = peek();
            std::string f = ident("generator");
            int h = p.generator_index(f);
            if (h < 0) fail("unknown generator '" + f + "'", ft);
            m.word.push_back(h);
        }
        return m;
    }

    Term term(const Presentation& p, bool negative)
    {
        Term t;
        t.coeff = 1;
        if (peek().kind == Tok::Int) {
            t.coeff = Scalar(integer("coefficient"));
            if (is("*")) next();
        }
        if (negative) t.coeff = -t.coeff;
        t.mono = monomial(p);
        return t;
    }

    Polynomial polynomial(const Presentation& p)
    {
        Polynomial r;
        bool neg = false;
        if (is("-")) {
            next();
            neg = true;
        }
        r.terms.push_back(term(p, neg));
        while (is("+") || is("-")) {
            neg = next().text == "-";
            r.terms.push_back(term(p, neg));
        }
        return r;
    }

    MorphismSpec morphism(const Document& d)
    {
        MorphismSpec m;
        const Token& nt = peek();
        m.name = ident("morphism name");
        for (const auto& x : d.morphisms)
            if (x.name == m.name) fail("duplicate morphism '" + m.name + "'", nt);
        expect(":");
        const Token& st = peek();
        m.source = ident("source algebra");
        expect("->");
        const Token& tt = peek();
        m.target = ident("target algebra");
        const Presentation* src = nullptr;
        const Presentation* tgt = nullptr;
        for (const auto& a : d.algebras) {
            if (a.name == m.source) src = &a;
            if (a.name == m.target) tgt = &a;
        }
        if (!src) fail("unknown algebra '" + m.source + "'", st);
        if (!tgt) fail("unknown algebra '" + m.target + "'", tt);
        expect("{");
        std::set<std::string> seen;
        while (!is("}")) {
            const Token& gt = peek();
            std::string g = ident("source generator");
            int gi = src->generator_index(g);
            if (gi < 0) fail("unknown generator '" + g + "' of " + m.source, gt);
            if (!seen.insert(g).second) fail("generator '" + g + "' assigned twice", gt);
            expect("->");
            const Token& pt = peek();
            Polynomial img = polynomial(*tgt);
            check_homogeneous(*tgt, img, pt);
            int d0 = tgt->degree(img.terms.front().mono);
            if (d0 != src->generators[static_cast<std::size_t>(gi)].degree)
                fail("image of '" + g + "' has degree " + std::to_string(d0) + ", expected " +
                         std::to_string(src->generators[static_cast<std::size_t>(gi)].degree),
                     pt);
            m.images.emplace_back(g, std::move(img));
            expect(";");
        }
        expect("}");
        return m;
    }
};

std::string coefficient_prefix(const Scalar& c)
{
    Scalar a = abs(c);
    if (a == 1) return "";
    return a.get_str() + " ";
}

}  // namespace

Document parse_document(const std::string& text) { return Parser(text).document(); }

Presentation parse_presentation(const std::string& text, const std::string& name)
{
    std::size_t i = 0;
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '#')) {
        if (text[i] == '#')
            while (i < text.size() && text[i] != '\n') ++i;
        else
            ++i;
    }
    if (text.compare(i, 7, "algebra") == 0 || text.compare(i, 5, "field") == 0) {
        Document d = parse_document(text);
        if (d.algebras.empty()) throw ParseError("no algebra in input", 1, 1);
        return d.algebras.front();
    }
    return Parser(text).bare_body(name);
}

std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& names)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
        const Term& t = p.terms[i];
        bool neg = sgn(t.coeff) < 0;
        if (i == 0)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        os << coefficient_prefix(t.coeff);
        if (t.mono.power) {
            os << names.at(static_cast<std::size_t>(t.mono.word.front())) << "^" << t.mono.word.size();
        } else {
            for (std::size_t k = 0; k < t.mono.word.size(); ++k)
                os << (k ? "*" : "") << names.at(static_cast<std::size_t>(t.mono.word[k]));
        }
    }
    return os.str();
}

static std::vector<std::string> generator_names(const Presentation& p)
{
    std::vector<std::string> names;
    for (const auto& g : p.generators) names.push_back(g.name);
    return names;
}

std::string print_presentation(const Presentation& p)
{
    std::ostringstream os;
    os << "algebra " << p.name << " {\n  generators: ";
    for (std::size_t i = 0; i < p.generators.size(); ++i)
        os << (i ? ", " : "") << p.generators[i].name << ":" << p.generators[i].degree;
    os << ";\n";
    if (!p.relations.empty()) {
        auto names = generator_names(p);
        os << "  relations: ";
        for (std::size_t i = 0; i < p.relations.size(); ++i) os << (i ? ", " : "") << print_polynomial(p.relations[i], names);
        os << ";\n";
    }
    if (p.commutativity == Commutativity::Graded) os << "  commutativity: graded;\n";
    os << "}\n";
    return os.str();
}

std::string print_document(const Document& d)
{
    std::ostringstream os;
    if (d.field) os << "field " << *d.field << ";\n";
    for (const auto& a : d.algebras) os << print_presentation(a);
    for (const auto& m : d.morphisms) {
        auto names = generator_names(d.algebra(m.target));
        os << "morphism " << m.name << " : " << m.source << " -> " << m.target << " {\n";
        for (const auto& [g, img] : m.images) os << "  " << g << " -> " << print_polynomial(img, names) << ";\n";
        os << "}\n";
    }
    return os.str();
}

}  // namespace kdsg
