// Copyright 2026 The Statnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "statnet/errors.hpp"
#include "statnet/network.hpp"

namespace statnet {

namespace {

enum class Tok { ident, number, lparen, rparen, comma, lbrace, rbrace, semicolon, equals, arrow, newline, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
};

const char *describe(Tok kind) {
    switch (kind) {
        case Tok::ident:
            return "identifier";
        case Tok::number:
            return "number";
        case Tok::lparen:
            return "'('";
        case Tok::rparen:
            return "')'";
        case Tok::comma:
            return "','";
        case Tok::lbrace:
            return "'{'";
        case Tok::rbrace:
            return "'}'";
        case Tok::semicolon:
            return "';'";
        case Tok::equals:
            return "'='";
        case Tok::arrow:
            return "'->'";
        case Tok::newline:
            return "end of line";
        case Tok::end:
            return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t i = 0;
    auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
            continue;
        }
        if (c == '\n') {
            out.push_back({Tok::newline, "", line});
            ++line;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && is_ident_char(text[j])) {
                ++j;
            }
            out.push_back({Tok::ident, std::string(text.substr(i, j - i)), line});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                ++j;
            }
            out.push_back({Tok::number, std::string(text.substr(i, j - i)), line});
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::arrow, "->", line});
            i += 2;
            continue;
        }
        Tok kind;
        switch (c) {
            case '(':
                kind = Tok::lparen;
                break;
            case ')':
                kind = Tok::rparen;
                break;
            case ',':
                kind = Tok::comma;
                break;
            case '{':
                kind = Tok::lbrace;
                break;
            case '}':
                kind = Tok::rbrace;
                break;
            case ';':
                kind = Tok::semicolon;
                break;
            case '=':
                kind = Tok::equals;
                break;
            default:
                throw ParseError(line, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, std::string(1, c), line});
        ++i;
    }
    out.push_back({Tok::end, "", line});
    return out;
}

struct PendingPin {
    std::string node;
    int value;
    std::optional<PinKind> kind;
    std::size_t line;
};

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {
    }

    Network parse() {
        while (peek().kind != Tok::end) {
            if (peek().kind == Tok::newline) {
                ++pos_;
                continue;
            }
            statement();
        }
        return finish();
    }

   private:
    const Token &peek() const {
        return toks_[pos_];
    }

    const Token &take() {
        return toks_[pos_++];
    }

    const Token &expect(Tok kind) {
        const Token &t = peek();
        if (t.kind != kind) {
            throw ParseError(
                t.line, std::string("expected ") + describe(kind) + " but found " +
                            (t.text.empty() ? std::string(describe(t.kind)) : "'" + t.text + "'"));
        }
        return take();
    }

    void end_of_statement() {
        if (peek().kind != Tok::end) {
            expect(Tok::newline);
        }
    }

    void skip_newlines() {
        while (peek().kind == Tok::newline) {
            ++pos_;
        }
    }

    std::string declared_node(const Token &t) {
        if (!declared_.count(t.text)) {
            throw ParseError(t.line, "undeclared node '" + t.text + "'");
        }
        return t.text;
    }

    void statement() {
        const Token &kw = expect(Tok::ident);
        if (kw.text == "nodes") {
            nodes_statement(kw);
        } else if (kw.text == "gate") {
            gate_statement();
        } else if (kw.text == "link") {
            link_statement();
        } else if (kw.text == "fix") {
            fix_statement();
        } else if (kw.text == "drive") {
            drive_statement(kw);
        } else {
            throw ParseError(kw.line, "unknown statement '" + kw.text + "'");
        }
    }

    void nodes_statement(const Token &kw) {
        if (peek().kind != Tok::ident) {
            throw ParseError(kw.line, "'nodes' needs at least one name");
        }
        while (peek().kind == Tok::ident) {
            const Token &t = take();
            if (!declared_.insert(t.text).second) {
                throw ParseError(t.line, "duplicate node '" + t.text + "'");
            }
            nodes_.push_back(t.text);
        }
        end_of_statement();
    }

    std::vector<std::string> node_list() {
        expect(Tok::lparen);
        std::vector<std::string> out;
        if (peek().kind == Tok::rparen) {
            take();
            return out;
        }
        while (true) {
            out.push_back(declared_node(expect(Tok::ident)));
            if (peek().kind == Tok::comma) {
                take();
                continue;
            }
            expect(Tok::rparen);
            return out;
        }
    }

    static std::uint32_t bits_value(const Token &t, std::size_t width, const std::string &what) {
        const std::string &s = t.kind == Tok::number ? t.text : std::string();
        if (s.size() != width) {
            throw ParseError(
                t.line, what + " pattern '" + s + "' has " + std::to_string(s.size()) + " bits, expected " +
                            std::to_string(width));
        }
        std::uint32_t v = 0;
        for (char c : s) {
            if (c != '0' && c != '1') {
                throw ParseError(t.line, what + " pattern '" + s + "' is not a bitstring");
            }
            v = (v << 1) | static_cast<std::uint32_t>(c - '0');
        }
        return v;
    }

    void gate_statement() {
        const Token &name = expect(Tok::ident);
        std::size_t line = name.line;
        if (!gate_names_.insert(name.text).second) {
            throw ParseError(line, "duplicate gate name '" + name.text + "'");
        }
        const Token &in_kw = expect(Tok::ident);
        if (in_kw.text != "in") {
            throw ParseError(in_kw.line, "expected 'in(...)' after gate name");
        }
        auto ins = node_list();
        const Token &out_kw = expect(Tok::ident);
        if (out_kw.text != "out") {
            throw ParseError(out_kw.line, "expected 'out(...)' after input list");
        }
        auto outs = node_list();
        std::set<std::string> local;
        for (const auto &n : ins) {
            if (!local.insert(n).second) {
                throw ParseError(line, "gate '" + name.text + "' lists node '" + n + "' more than once");
            }
        }
        for (const auto &n : outs) {
            if (!local.insert(n).second) {
                throw ParseError(line, "gate '" + name.text + "' lists node '" + n + "' more than once");
            }
        }

        skip_newlines();
        expect(Tok::lbrace);
        std::vector<TableRow> rows;
        std::set<std::uint32_t> seen_inputs;
        while (true) {
            skip_newlines();
            if (peek().kind == Tok::rbrace) {
                take();
                break;
            }
            std::size_t row_line = peek().line;
            std::uint32_t in_bits = 0;
            if (peek().kind == Tok::arrow) {
                if (!ins.empty()) {
                    throw ParseError(row_line, "missing input pattern");
                }
            } else {
                in_bits = bits_value(take(), ins.size(), "input");
            }
            expect(Tok::arrow);
            std::uint32_t out_bits = 0;
            if (outs.empty() && (peek().kind == Tok::semicolon || peek().kind == Tok::rbrace)) {
                out_bits = 0;
            } else {
                out_bits = bits_value(take(), outs.size(), "output");
            }
            if (!seen_inputs.insert(in_bits).second) {
                throw ParseError(row_line, "gate '" + name.text + "' lists an input pattern twice");
            }
            rows.push_back({in_bits, out_bits});
            skip_newlines();
            if (peek().kind == Tok::semicolon) {
                take();
                continue;
            }
            skip_newlines();
            if (peek().kind != Tok::rbrace) {
                throw ParseError(peek().line, "expected ';' or '}' in truth table");
            }
        }
        if (rows.empty()) {
            throw ParseError(line, "gate '" + name.text + "' has an empty truth table");
        }
        TruthTable table;
        try {
            table = TruthTable(ins.size(), outs.size(), std::move(rows));
        } catch (const InputError &e) {
            throw ParseError(line, "gate '" + name.text + "': " + e.what());
        }
        gates_.push_back(Gate{name.text, std::move(ins), std::move(outs), std::move(table)});
        end_of_statement();
    }

    void link_statement() {
        const Token &from = expect(Tok::ident);
        std::string a = declared_node(from);
        expect(Tok::arrow);
        std::string b = declared_node(expect(Tok::ident));
        if (a == b) {
            throw ParseError(from.line, "link endpoints must differ");
        }
        std::string name = "link_" + a + "_" + b;
        if (!gate_names_.insert(name).second) {
            throw ParseError(from.line, "duplicate link " + a + " -> " + b);
        }
        gates_.push_back(Gate{name, {a}, {b}, TruthTable::inverter()});
        end_of_statement();
    }

    void fix_statement() {
        const Token &node_tok = expect(Tok::ident);
        std::string node = declared_node(node_tok);
        expect(Tok::equals);
        const Token &value = expect(Tok::number);
        if (value.text != "0" && value.text != "1") {
            throw ParseError(value.line, "pin value for '" + node + "' must be 0 or 1, got " + value.text);
        }
        std::optional<PinKind> kind;
        if (peek().kind == Tok::ident) {
            const Token &k = take();
            if (k.text == "input") {
                kind = PinKind::input;
            } else if (k.text == "output") {
                kind = PinKind::output;
            } else {
                throw ParseError(k.line, "pin kind must be 'input' or 'output', got '" + k.text + "'");
            }
        }
        for (const auto &p : pins_) {
            if (p.node == node) {
                throw ParseError(node_tok.line, "node '" + node + "' is pinned more than once");
            }
        }
        pins_.push_back({node, value.text == "1" ? 1 : 0, kind, node_tok.line});
        end_of_statement();
    }

    void drive_statement(const Token &kw) {
        if (drive_) {
            throw ParseError(kw.line, "only one drive node may be declared");
        }
        drive_ = declared_node(expect(Tok::ident));
        drive_line_ = kw.line;
        end_of_statement();
    }

    Network finish() {
        std::vector<Pin> pins;
        for (const auto &p : pins_) {
            PinKind kind = p.kind.value_or(PinKind::input);
            if (!p.kind) {
                for (const auto &g : gates_) {
                    for (const auto &o : g.out_nodes) {
                        if (o == p.node) {
                            kind = PinKind::output;
                        }
                    }
                }
            }
            pins.push_back(Pin{p.node, p.value, kind});
        }
        if (drive_) {
            auto it = std::find_if(pins.begin(), pins.end(), [&](const Pin &p) { return p.node == *drive_; });
            if (it == pins.end() || it->kind != PinKind::output) {
                throw ParseError(drive_line_, "drive node '" + *drive_ + "' must carry an output pin");
            }
        }
        try {
            return Network(nodes_, gates_, std::move(pins), drive_);
        } catch (const ParseError &) {
            throw;
        } catch (const InputError &e) {
            throw ParseError(0, e.what());
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::string> nodes_;
    std::set<std::string> declared_;
    std::vector<Gate> gates_;
    std::set<std::string> gate_names_;
    std::vector<PendingPin> pins_;
    std::optional<std::string> drive_;
    std::size_t drive_line_ = 0;
};

}  // namespace

Network parse_network(std::string_view text) {
    return Parser(tokenize(text)).parse();
}

}  // namespace statnet
