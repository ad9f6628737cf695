#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "regroup/errors.hpp"
#include "regroup/ingest.hpp"

namespace regroup {

namespace {

enum class Tok { Id, Number, Str, Punct, AttrOpen, AttrClose, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 0;

    bool is_punct(char c) const { return kind == Tok::Punct && text.size() == 1 && text[0] == c; }
    bool is_id(const char *word) const { return kind == Tok::Id && text == word; }
};

class Lexer {
  public:
    explicit Lexer(const std::string &text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> tokens;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= text_.size())
                break;
            tokens.push_back(next_token());
        }
        tokens.push_back({Tok::End, "", line_});
        return tokens;
    }

  private:
    void skip_space_and_comments()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
                pos_ += 2;
                while (pos_ + 1 < text_.size() &&
                       !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
                    if (text_[pos_] == '\n')
                        ++line_;
                    ++pos_;
                }
                if (pos_ + 1 >= text_.size())
                    throw ParseError(line_, "unterminated block comment");
                pos_ += 2;
            } else {
                break;
            }
        }
    }

    Token next_token()
    {
        const char c = text_[pos_];
        const int line = line_;
        if (c == '(' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
            pos_ += 2;
            return {Tok::AttrOpen, "(*", line};
        }
        if (c == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ')') {
            pos_ += 2;
            return {Tok::AttrClose, "*)", line};
        }
        if (c == '\\') {
            ++pos_;
            const size_t start = pos_;
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == start)
                throw ParseError(line, "empty escaped identifier");
            return {Tok::Id, text_.substr(start, pos_ - start), line};
        }
        if (c == '"') {
            ++pos_;
            const size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n')
                    throw ParseError(line, "unterminated string");
                ++pos_;
            }
            if (pos_ >= text_.size())
                throw ParseError(line, "unterminated string");
            Token tok{Tok::Str, text_.substr(start, pos_ - start), line};
            ++pos_;
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '\'')
                consume_based_tail();
            return {Tok::Number, text_.substr(start, pos_ - start), line};
        }
        if (c == '\'') {
            const size_t start = pos_;
            consume_based_tail();
            return {Tok::Number, text_.substr(start, pos_ - start), line};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                    text_[pos_] == '$'))
                ++pos_;
            return {Tok::Id, text_.substr(start, pos_ - start), line};
        }
        static const std::string punct = "()[]{};,.#=:";
        if (punct.find(c) != std::string::npos) {
            ++pos_;
            return {Tok::Punct, std::string(1, c), line};
        }
        throw ParseError(line, std::string("unexpected character '") + c + "'");
    }

    void consume_based_tail()
    {
        // at '\'': 'h dead_beef style tail
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 's' || text_[pos_] == 'S'))
            ++pos_;
        if (pos_ >= text_.size())
            throw ParseError(line_, "truncated based literal");
        ++pos_; // base character, validated when the literal is interpreted
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
    }

    const std::string &text_;
    size_t pos_ = 0;
    int line_ = 1;
};

bool is_output_pin(CellType type, const std::string &pin)
{
    switch (type) {
    case CellType::Lut1:
    case CellType::Lut2:
    case CellType::Lut3:
    case CellType::Lut4:
    case CellType::Lut5:
    case CellType::Lut6:
        return pin == "O" || pin == "O5" || pin == "O6";
    case CellType::Fdre:
    case CellType::Fdse:
    case CellType::Fdce:
    case CellType::Fdpe:
    case CellType::Ldce:
    case CellType::Ldpe:
    case CellType::Srl16e:
        return pin == "Q";
    case CellType::Srlc32e:
        return pin == "Q" || pin == "Q31";
    case CellType::Carry4:
        return pin == "O" || pin == "CO";
    case CellType::Muxf7:
    case CellType::Muxf8:
    case CellType::Ram32x1s:
    case CellType::Ram64x1s:
    case CellType::Ramd32:
    case CellType::Rams32:
    case CellType::Ramd64e:
    case CellType::Rams64e:
        return pin == "O";
    case CellType::Ram32m:
    case CellType::Ram64m:
        return pin == "DOA" || pin == "DOB" || pin == "DOC" || pin == "DOD";
    }
    return false;
}

const std::set<std::string> kUnsupported = {
    "always",   "always_comb", "always_ff", "always_latch", "initial",  "reg",
    "generate", "endgenerate", "genvar",    "function",     "task",     "specify",
    "parameter", "localparam", "defparam",  "if",           "for",      "case",
    "begin",    "tri",         "supply0",   "supply1",      "integer",  "real",
};

struct WireDecl {
    bool is_vector = false;
    int msb = 0;
    int lsb = 0;
    bool from_header = false;
};

struct Endpoint {
    CellId cell = 0;
    std::string pin;
    bool is_output = false;
    std::string element;
    int line = 0;
};

struct PendingCell {
    std::string type_name;
    CellType type = CellType::Lut1;
    std::string name;
    std::map<std::string, std::string> attrs;
    std::map<std::string, std::string> params;
    int line = 0;
};

class Parser {
  public:
    Parser(std::vector<Token> tokens, const DeviceProfile &profile,
           std::vector<std::string> *warnings)
        : tokens_(std::move(tokens)), profile_(profile), warnings_(warnings)
    {
    }

    NetlistDocument run()
    {
        expect_id("module");
        expect(Tok::Id, "module name");
        if (peek().is_punct('('))
            parse_header_ports();
        expect_punct(';');

        while (!peek().is_id("endmodule")) {
            if (peek().kind == Tok::End)
                throw ParseError(peek().line, "missing endmodule");
            parse_item();
        }
        next(); // endmodule
        if (peek().kind != Tok::End)
            throw ParseError(peek().line, "unexpected content after endmodule");

        return assemble();
    }

  private:
    // ---- token plumbing ----
    const Token &peek(size_t ahead = 0) const
    {
        const size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    const Token &next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
    const Token &expect(Tok kind, const char *what)
    {
        const Token &tok = next();
        if (tok.kind != kind)
            throw ParseError(tok.line, std::string("expected ") + what);
        return tok;
    }
    void expect_punct(char c)
    {
        const Token &tok = next();
        if (!tok.is_punct(c))
            throw ParseError(tok.line, std::string("expected '") + c + "'");
    }
    void expect_id(const char *word)
    {
        const Token &tok = next();
        if (!tok.is_id(word))
            throw ParseError(tok.line, std::string("expected '") + word + "'");
    }

    // ---- declarations ----
    void declare(const std::string &name, std::optional<std::pair<int, int>> range,
                 bool from_header, int line)
    {
        WireDecl decl;
        decl.is_vector = range.has_value();
        if (range) {
            decl.msb = range->first;
            decl.lsb = range->second;
        }
        decl.from_header = from_header;

        auto it = wires_.find(name);
        if (it != wires_.end()) {
            if (it->second.from_header && !from_header) {
                forget_elements(name, it->second);
                wires_.erase(it);
            } else if (it->second.is_vector == decl.is_vector && it->second.msb == decl.msb &&
                       it->second.lsb == decl.lsb) {
                return; // e.g. `input x;` followed by `wire x;`
            } else {
                throw ParseError(line, "conflicting redeclaration of \"" + name + "\"");
            }
        }
        wires_[name] = decl;
        if (decl.is_vector) {
            const int lo = std::min(decl.msb, decl.lsb);
            const int hi = std::max(decl.msb, decl.lsb);
            for (int i = lo; i <= hi; ++i)
                add_element(name + "[" + std::to_string(i) + "]");
        } else {
            add_element(name);
        }
    }

    void add_element(const std::string &element)
    {
        if (known_elements_.insert(element).second)
            element_order_.push_back(element);
    }

    void forget_elements(const std::string &name, const WireDecl &decl)
    {
        auto drop = [&](const std::string &element) {
            known_elements_.erase(element);
            element_order_.erase(
                std::remove(element_order_.begin(), element_order_.end(), element),
                element_order_.end());
        };
        if (decl.is_vector) {
            const int lo = std::min(decl.msb, decl.lsb);
            const int hi = std::max(decl.msb, decl.lsb);
            for (int i = lo; i <= hi; ++i)
                drop(name + "[" + std::to_string(i) + "]");
        } else {
            drop(name);
        }
    }

    std::optional<std::pair<int, int>> try_parse_range()
    {
        if (!peek().is_punct('['))
            return std::nullopt;
        next();
        const int msb = parse_plain_int();
        expect_punct(':');
        const int lsb = parse_plain_int();
        expect_punct(']');
        return std::make_pair(msb, lsb);
    }

    int parse_plain_int()
    {
        const Token &tok = expect(Tok::Number, "integer");
        if (tok.text.find('\'') != std::string::npos)
            throw ParseError(tok.line, "expected a plain integer, got \"" + tok.text + "\"");
        return std::stoi(tok.text);
    }

    void parse_header_ports()
    {
        expect_punct('(');
        std::optional<std::pair<int, int>> pending_range;
        bool typed = false;
        while (!peek().is_punct(')')) {
            const Token &tok = next();
            if (tok.kind == Tok::Id &&
                (tok.text == "input" || tok.text == "output" || tok.text == "inout" ||
                 tok.text == "wire")) {
                typed = true;
                pending_range.reset();
            } else if (tok.is_punct('[')) {
                --pos_;
                pending_range = try_parse_range();
            } else if (tok.kind == Tok::Id) {
                declare(tok.text, pending_range, /*from_header=*/!typed, tok.line);
                if (!typed)
                    pending_range.reset();
            } else if (tok.is_punct(',')) {
                // separator
            } else {
                throw ParseError(tok.line, "unexpected token in module port list");
            }
        }
        expect_punct(')');
    }

    // ---- items ----
    void parse_item()
    {
        std::map<std::string, std::string> attrs;
        while (peek().kind == Tok::AttrOpen)
            parse_attr_block(attrs);

        const Token &tok = peek();
        if (tok.kind != Tok::Id)
            throw ParseError(tok.line, "expected a declaration or instantiation");
        if (kUnsupported.count(tok.text))
            throw ParseError(tok.line, "unsupported construct \"" + tok.text +
                                           "\"; only structural netlists are accepted");
        if (tok.text == "wire" || tok.text == "input" || tok.text == "output" ||
            tok.text == "inout") {
            parse_wire_decl();
            return;
        }
        if (tok.text == "assign") {
            parse_assign();
            return;
        }
        parse_instance(attrs);
    }

    void parse_attr_block(std::map<std::string, std::string> &attrs)
    {
        next(); // (*
        while (true) {
            const Token &key = expect(Tok::Id, "attribute name");
            std::string value = "1";
            if (peek().is_punct('=')) {
                next();
                const Token &val = next();
                if (val.kind != Tok::Str && val.kind != Tok::Number && val.kind != Tok::Id)
                    throw ParseError(val.line, "malformed attribute value");
                value = val.text;
            }
            attrs[key.text] = value;
            if (peek().is_punct(',')) {
                next();
                continue;
            }
            break;
        }
        if (next().kind != Tok::AttrClose)
            throw ParseError(peek().line, "expected '*)'");
    }

    void parse_wire_decl()
    {
        next(); // wire/input/output/inout
        const auto range = try_parse_range();
        while (true) {
            const Token &name = expect(Tok::Id, "wire name");
            declare(name.text, range, /*from_header=*/false, name.line);
            if (peek().is_punct(',')) {
                next();
                continue;
            }
            break;
        }
        expect_punct(';');
    }

    // A connection-side reference: wire element, constant, or nothing.
    struct Ref {
        enum class Kind { Element, Constant, Open } kind = Kind::Open;
        std::string element;
    };

    Ref parse_ref()
    {
        Ref ref;
        const Token &tok = peek();
        if (tok.kind == Tok::Number) {
            next();
            ref.kind = Ref::Kind::Constant;
            return ref;
        }
        if (tok.kind != Tok::Id)
            throw ParseError(tok.line, "expected a wire reference or constant");
        next();
        std::string element = tok.text;
        if (peek().is_punct('[')) {
            next();
            const int index = parse_plain_int();
            expect_punct(']');
            element += "[" + std::to_string(index) + "]";
            auto it = wires_.find(tok.text);
            if (it == wires_.end())
                throw ParseError(tok.line, "reference to undeclared wire \"" + tok.text + "\"");
            if (!it->second.is_vector)
                throw ParseError(tok.line, "bit-select on scalar wire \"" + tok.text + "\"");
            const int lo = std::min(it->second.msb, it->second.lsb);
            const int hi = std::max(it->second.msb, it->second.lsb);
            if (index < lo || index > hi)
                throw ParseError(tok.line, "bit index " + std::to_string(index) +
                                               " out of range for \"" + tok.text + "\"");
        } else {
            auto it = wires_.find(element);
            if (it == wires_.end())
                throw ParseError(tok.line, "reference to undeclared wire \"" + element + "\"");
            if (it->second.is_vector)
                throw ParseError(tok.line,
                                 "vector wire \"" + element + "\" used without a bit-select");
        }
        ref.kind = Ref::Kind::Element;
        ref.element = element;
        return ref;
    }

    void parse_assign()
    {
        const int line = next().line; // assign
        const Ref lhs = parse_ref();
        if (lhs.kind != Ref::Kind::Element)
            throw ParseError(line, "assign target must be a wire");
        expect_punct('=');
        const Ref rhs = parse_ref();
        if (!peek().is_punct(';'))
            throw ParseError(peek().line,
                             "assign with an expression is not supported; only identifier or "
                             "constant right-hand sides are accepted");
        next();
        if (rhs.kind == Ref::Kind::Element)
            merge(lhs.element, rhs.element);
        // constant assigns tie the wire off; they produce no net
    }

    void parse_instance(const std::map<std::string, std::string> &attrs)
    {
        PendingCell cell;
        const Token &type_tok = next();
        cell.type_name = type_tok.text;
        cell.line = type_tok.line;
        cell.attrs = attrs;

        if (is_dsp_type_name(cell.type_name))
            throw ParseError(type_tok.line, "DSP cell type \"" + cell.type_name +
                                                "\" is excluded from ingestion");
        const auto type = cell_type_from_string(cell.type_name);
        if (!type)
            throw ParseError(type_tok.line,
                             "unsupported cell type \"" + cell.type_name + "\"");
        cell.type = *type;

        if (peek().is_punct('#'))
            parse_param_block(cell);

        const Token &name_tok = expect(Tok::Id, "instance name");
        cell.name = name_tok.text;
        if (peek().is_punct('['))
            throw ParseError(peek().line, "instance arrays are not supported");

        const CellId id = static_cast<CellId>(pending_cells_.size());
        std::set<std::string> seen_pins;
        expect_punct('(');
        while (!peek().is_punct(')')) {
            expect_punct('.');
            const Token &pin = expect(Tok::Id, "pin name");
            if (!seen_pins.insert(pin.text).second)
                throw ParseError(pin.line, "duplicate connection to pin \"" + pin.text +
                                               "\" on \"" + cell.name + "\"");
            expect_punct('(');
            if (!peek().is_punct(')')) {
                const Ref ref = parse_ref();
                if (ref.kind == Ref::Kind::Element) {
                    Endpoint ep;
                    ep.cell = id;
                    ep.pin = pin.text;
                    ep.is_output = is_output_pin(cell.type, pin.text);
                    ep.element = ref.element;
                    ep.line = pin.line;
                    endpoints_[ref.element].push_back(ep);
                }
            }
            expect_punct(')');
            if (peek().is_punct(',')) {
                next();
                continue;
            }
            break;
        }
        expect_punct(')');
        expect_punct(';');
        pending_cells_.push_back(std::move(cell));
    }

    void parse_param_block(PendingCell &cell)
    {
        next(); // '#'
        expect_punct('(');
        while (!peek().is_punct(')')) {
            expect_punct('.');
            const Token &name = expect(Tok::Id, "parameter name");
            expect_punct('(');
            const Token &value = next();
            if (value.kind != Tok::Number && value.kind != Tok::Str && value.kind != Tok::Id)
                throw ParseError(value.line, "unsupported parameter value");
            cell.params[name.text] = value.text;
            expect_punct(')');
            if (peek().is_punct(',')) {
                next();
                continue;
            }
            break;
        }
        expect_punct(')');
    }

    // ---- alias handling ----
    std::string find_root(const std::string &element)
    {
        auto it = alias_parent_.find(element);
        if (it == alias_parent_.end())
            return element;
        const std::string root = find_root(it->second);
        alias_parent_[element] = root;
        return root;
    }

    void merge(const std::string &a, const std::string &b)
    {
        const std::string ra = find_root(a);
        const std::string rb = find_root(b);
        if (ra != rb)
            alias_parent_[ra] = rb;
    }

    // ---- final assembly ----
    NetlistDocument assemble()
    {
        NetlistDocument doc;
        doc.cells.reserve(pending_cells_.size());
        for (size_t i = 0; i < pending_cells_.size(); ++i) {
            const PendingCell &pending = pending_cells_[i];
            Cell cell;
            cell.id = static_cast<CellId>(i);
            cell.name = pending.name;
            cell.cell_type = pending.type;
            cell.hier_name = pending.name;

            auto loc = pending.attrs.find("LOC");
            if (loc == pending.attrs.end())
                throw ParseError(pending.line, "cell \"" + pending.name +
                                                   "\" has no LOC attribute; placement is "
                                                   "mandatory for this pipeline");
            const std::string &site = loc->second;
            const auto [tile, region] = derive_tile_and_region(site, profile_);
            cell.placement = parse_location(site, tile, region);

            const int lut_width = lut_input_count(pending.type);
            if (lut_width > 0) {
                std::string init;
                if (auto p = pending.params.find("INIT"); p != pending.params.end())
                    init = p->second;
                else if (auto a = pending.attrs.find("INIT"); a != pending.attrs.end())
                    init = a->second;
                if (init.empty())
                    throw ParseError(pending.line,
                                     "LUT cell \"" + pending.name + "\" has no INIT value");
                cell.boolean_equation = canonical_init_mask(init, 1 << lut_width);
            }
            doc.cells.push_back(std::move(cell));
        }

        // Nets, one per driven alias class, in wire declaration order.
        std::map<std::string, std::vector<Endpoint>> by_root;
        std::vector<std::string> root_order;
        for (const std::string &element : element_order_) {
            const std::string root = find_root(element);
            auto it = by_root.find(root);
            if (it == by_root.end()) {
                root_order.push_back(root);
                it = by_root.emplace(root, std::vector<Endpoint>{}).first;
            }
            auto ep = endpoints_.find(element);
            if (ep != endpoints_.end())
                it->second.insert(it->second.end(), ep->second.begin(), ep->second.end());
        }

        for (const std::string &root : root_order) {
            const auto &eps = by_root[root];
            const Endpoint *driver = nullptr;
            for (const Endpoint &ep : eps) {
                if (!ep.is_output)
                    continue;
                if (driver)
                    throw ParseError(ep.line, "wire \"" + ep.element + "\" has multiple drivers");
                driver = &ep;
            }
            if (!driver) {
                if (!eps.empty())
                    warn("wire \"" + root + "\" has no driving cell; dropped");
                continue;
            }
            Net net;
            net.name = driver->element;
            net.source = {driver->cell, driver->pin};
            for (const Endpoint &ep : eps)
                if (!ep.is_output)
                    net.sinks.push_back({ep.cell, ep.pin});
            if (net.sinks.empty())
                warn("net \"" + net.name + "\" is dangling (no sinks)");
            doc.nets.push_back(std::move(net));
        }
        return doc;
    }

    void warn(std::string message)
    {
        if (warnings_)
            warnings_->push_back(std::move(message));
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
    const DeviceProfile &profile_;
    std::vector<std::string> *warnings_;

    std::map<std::string, WireDecl> wires_;
    std::unordered_set<std::string> known_elements_;
    std::vector<std::string> element_order_;
    std::unordered_map<std::string, std::string> alias_parent_;
    std::unordered_map<std::string, std::vector<Endpoint>> endpoints_;
    std::vector<PendingCell> pending_cells_;
};

} // namespace

std::string canonical_init_mask(const std::string &literal, int width)
{
    if (width < 1 || width > 64)
        throw Error("unsupported INIT mask width " + std::to_string(width));

    std::string body = literal;
    body.erase(std::remove(body.begin(), body.end(), '_'), body.end());
    if (body.empty())
        throw Error("empty INIT value");

    // Already-canonical binary strings pass through.
    if (body.find('\'') == std::string::npos &&
        body.find_first_not_of("01") == std::string::npos &&
        static_cast<int>(body.size()) == width)
        return body;

    char base = 'd';
    std::string digits = body;
    const size_t quote = body.find('\'');
    if (quote != std::string::npos) {
        size_t base_pos = quote + 1;
        if (base_pos < body.size() && (body[base_pos] == 's' || body[base_pos] == 'S'))
            ++base_pos;
        if (base_pos >= body.size())
            throw Error("malformed INIT literal \"" + literal + "\"");
        base = static_cast<char>(std::tolower(static_cast<unsigned char>(body[base_pos])));
        digits = body.substr(base_pos + 1);
    }
    if (digits.empty())
        throw Error("malformed INIT literal \"" + literal + "\"");

    uint64_t value = 0;
    auto shift_in = [&](int bits_per_digit, int digit_value) {
        if ((value >> (64 - bits_per_digit)) != 0)
            throw Error("INIT literal \"" + literal + "\" exceeds 64 bits");
        value = (value << bits_per_digit) | static_cast<uint64_t>(digit_value);
    };
    for (char c : digits) {
        const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        int digit = -1;
        if (lc >= '0' && lc <= '9')
            digit = lc - '0';
        else if (lc >= 'a' && lc <= 'f')
            digit = lc - 'a' + 10;
        switch (base) {
        case 'b':
            if (digit < 0 || digit > 1)
                throw Error("invalid binary digit in INIT literal \"" + literal + "\"");
            shift_in(1, digit);
            break;
        case 'o':
            if (digit < 0 || digit > 7)
                throw Error("invalid octal digit in INIT literal \"" + literal + "\"");
            shift_in(3, digit);
            break;
        case 'h':
            if (digit < 0)
                throw Error("invalid hex digit in INIT literal \"" + literal + "\"");
            shift_in(4, digit);
            break;
        case 'd': {
            if (digit < 0 || digit > 9)
                throw Error("invalid decimal digit in INIT literal \"" + literal + "\"");
            if (value > (UINT64_MAX - static_cast<uint64_t>(digit)) / 10)
                throw Error("INIT literal \"" + literal + "\" exceeds 64 bits");
            value = value * 10 + static_cast<uint64_t>(digit);
            break;
        }
        default:
            throw Error("unsupported base in INIT literal \"" + literal + "\"");
        }
    }

    if (width < 64 && (value >> width) != 0)
        throw Error("INIT value \"" + literal + "\" does not fit in " + std::to_string(width) +
                    " bits");

    std::string mask(static_cast<size_t>(width), '0');
    for (int bit = 0; bit < width; ++bit)
        if ((value >> bit) & 1u)
            mask[static_cast<size_t>(width - 1 - bit)] = '1';
    return mask;
}

NetlistDocument parse_verilog_subset(const std::string &text, const DeviceProfile &profile,
                                     std::vector<std::string> *warnings)
{
    Lexer lexer(text);
    Parser parser(lexer.run(), profile, warnings);
    return parser.run();
}

} // namespace regroup
