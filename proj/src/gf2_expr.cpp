#include "hqcm/gf2_expr.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>

#include "hqcm/errors.hpp"

namespace hqcm {

std::string OutcomeSymbol::label() const
{
    if (index == 0) return "m" + std::to_string(step);
    if (step < 10 && index < 10) return "m" + std::to_string(step) + std::to_string(index);
    return "m" + std::to_string(step) + "_" + std::to_string(index);
}

Gf2Expr::Gf2Expr(std::vector<OutcomeSymbol> symbols)
{
    for (const auto& s : symbols) *this ^= Gf2Expr(s);
}

Gf2Expr& Gf2Expr::operator^=(const Gf2Expr& other)
{
    std::vector<OutcomeSymbol> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
}

int Gf2Expr::evaluate(const Binding& binding) const
{
    int value = 0;
    for (const auto& s : terms_) {
        auto it = binding.find(s);
        if (it == binding.end()) throw InputError("unbound outcome symbol " + s.label());
        value ^= it->second & 1;
    }
    return value;
}

std::string Gf2Expr::to_string(const std::map<int, int>& group_sizes) const
{
    if (terms_.empty()) return "0";
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < terms_.size()) {
        const int step = terms_[i].step;
        auto group = group_sizes.find(step);
        if (group != group_sizes.end() && group->second > 1 && terms_[i].index == 1 &&
            i + group->second <= terms_.size()) {
            bool complete = true;
            for (int k = 0; k < group->second; ++k) {
                if (terms_[i + k] != OutcomeSymbol{step, k + 1}) {
                    complete = false;
                    break;
                }
            }
            if (complete) {
                parts.push_back("m" + std::to_string(step));
                i += group->second;
                continue;
            }
        }
        parts.push_back(terms_[i].label());
        ++i;
    }
    std::string out = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) out += "+" + parts[k];
    return out;
}

namespace {

OutcomeSymbol parse_symbol(const std::string& token)
{
    if (token.size() < 2 || token[0] != 'm') throw InputError("bad outcome symbol '" + token + "'");
    const std::string body = token.substr(1);
    for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '_') {
            throw InputError("bad outcome symbol '" + token + "'");
        }
    }
    const auto underscore = body.find('_');
    if (underscore != std::string::npos) {
        return {std::stoi(body.substr(0, underscore)), std::stoi(body.substr(underscore + 1))};
    }
    if (body.size() == 2) return {body[0] - '0', body[1] - '0'};
    return {std::stoi(body), 0};
}

}  // namespace

Gf2Expr parse_gf2_expr(const std::string& text, const std::map<int, int>& group_sizes)
{
    Gf2Expr out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw InputError("empty term in '" + text + "'");
        if (token != "0") {
            const OutcomeSymbol s = parse_symbol(token);
            auto group = group_sizes.find(s.step);
            if (s.index == 0 && group != group_sizes.end() && group->second > 1) {
                for (int k = 1; k <= group->second; ++k) out ^= Gf2Expr(OutcomeSymbol{s.step, k});
            } else {
                out ^= Gf2Expr(s);
            }
        }
        token.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '+') {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    return out;
}

}  // namespace hqcm
