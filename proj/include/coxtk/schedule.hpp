// schedule.hpp - a small expression grammar for edge-density schedules p(n)
//
//   expr  := term  { ('+' | '-') term }
//   term  := unary { ('*' | '/') unary }
//   unary := '-' unary | power
//   power := atom [ '^' unary ]
//   atom  := NUMBER | 'n' | 'log' '(' expr ')' | '(' expr ')'
//
// log is the natural logarithm.  Covers the schedules used by the sweep
// experiments: constants, a*log(n)/n, n^q, 1-a/n^2.
#ifndef COXTK_SCHEDULE_HPP
#define COXTK_SCHEDULE_HPP

#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "coxtk/errors.hpp"

namespace coxtk {

class DensitySchedule {
public:
    static DensitySchedule parse(const std::string& text) {
        DensitySchedule s;
        s.source_ = text;
        Parser p(text, s.nodes_);
        s.root_ = p.parse();
        return s;
    }

    double eval(double n) const { return eval_node(root_, n); }

    // Density for a concrete vertex count; values outside [0,1] are a
    // configuration error naming the offending n, never silently clamped.
    double density_at(int n) const {
        double p = eval(static_cast<double>(n));
        if (!(p >= 0.0 && p <= 1.0))
            throw InputError("density expression '" + source_ + "' evaluates to " +
                             std::to_string(p) + " at n=" + std::to_string(n) +
                             ", outside [0,1]");
        return p;
    }

    const std::string& source() const { return source_; }

private:
    enum class Op { Constant, N, Log, Add, Sub, Mul, Div, Pow, Neg };
    struct Node {
        Op op;
        double value = 0;
        int a = -1, b = -1;
    };

    double eval_node(int idx, double n) const {
        const Node& nd = nodes_[static_cast<std::size_t>(idx)];
        switch (nd.op) {
            case Op::Constant: return nd.value;
            case Op::N: return n;
            case Op::Log: return std::log(eval_node(nd.a, n));
            case Op::Add: return eval_node(nd.a, n) + eval_node(nd.b, n);
            case Op::Sub: return eval_node(nd.a, n) - eval_node(nd.b, n);
            case Op::Mul: return eval_node(nd.a, n) * eval_node(nd.b, n);
            case Op::Div: return eval_node(nd.a, n) / eval_node(nd.b, n);
            case Op::Pow: return std::pow(eval_node(nd.a, n), eval_node(nd.b, n));
            case Op::Neg: return -eval_node(nd.a, n);
        }
        return 0;
    }

    class Parser {
    public:
        Parser(const std::string& text, std::vector<Node>& nodes) : text_(text), nodes_(nodes) {}

        int parse() {
            int root = expr();
            skip_space();
            if (pos_ != text_.size())
                throw FormatError("unexpected token '" + rest_token() + "' in density expression");
            return root;
        }

    private:
        int make(Op op, double value = 0, int a = -1, int b = -1) {
            nodes_.push_back({op, value, a, b});
            return static_cast<int>(nodes_.size()) - 1;
        }

        void skip_space() {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }

        bool eat(char c) {
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == c) {
                ++pos_;
                return true;
            }
            return false;
        }

        char peek() {
            skip_space();
            return pos_ < text_.size() ? text_[pos_] : '\0';
        }

        std::string rest_token() const {
            std::size_t end = pos_;
            while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])))
                ++end;
            return text_.substr(pos_, end - pos_);
        }

        int expr() {
            int lhs = term();
            while (true) {
                if (eat('+'))
                    lhs = make(Op::Add, 0, lhs, term());
                else if (eat('-'))
                    lhs = make(Op::Sub, 0, lhs, term());
                else
                    return lhs;
            }
        }

        int term() {
            int lhs = unary();
            while (true) {
                if (eat('*'))
                    lhs = make(Op::Mul, 0, lhs, unary());
                else if (eat('/'))
                    lhs = make(Op::Div, 0, lhs, unary());
                else
                    return lhs;
            }
        }

        int unary() {
            if (eat('-')) return make(Op::Neg, 0, unary());
            return power();
        }

        int power() {
            int base = atom();
            if (eat('^')) return make(Op::Pow, 0, base, unary());
            return base;
        }

        int atom() {
            skip_space();
            if (pos_ >= text_.size()) throw FormatError("density expression ended unexpectedly");
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t used = 0;
                double v = std::stod(text_.substr(pos_), &used);
                pos_ += used;
                return make(Op::Constant, v);
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t end = pos_;
                while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end])))
                    ++end;
                std::string word = text_.substr(pos_, end - pos_);
                if (word == "n") {
                    pos_ = end;
                    return make(Op::N);
                }
                if (word == "log") {
                    pos_ = end;
                    if (!eat('(')) throw FormatError("'log' must be followed by '('");
                    int arg = expr();
                    if (!eat(')')) throw FormatError("missing ')' after log argument");
                    return make(Op::Log, 0, arg);
                }
                throw FormatError("unexpected token '" + word + "' in density expression");
            }
            if (eat('(')) {
                int inner = expr();
                if (!eat(')')) throw FormatError("missing ')' in density expression");
                return inner;
            }
            throw FormatError("unexpected token '" + rest_token() + "' in density expression");
        }

        const std::string& text_;
        std::vector<Node>& nodes_;
        std::size_t pos_ = 0;
    };

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string source_;
};

}  // namespace coxtk

#endif
