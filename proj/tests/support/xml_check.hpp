#pragma once

// Small XML well-formedness checker for test fixtures: prolog, comments,
// nested elements with quoted attributes, one root. Counts elements by name.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace xmlcheck {

struct Report {
    bool well_formed = false;
    std::string error;
    std::string root;
    std::map<std::string, std::size_t> element_counts;
};

inline Report check(std::string_view doc) {
    Report rep;
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool root_closed = false;
    auto fail = [&](const std::string& why) {
        rep.error = why + " at offset " + std::to_string(i);
        return rep;
    };
    auto is_name_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' || c == '.';
    };
    auto read_name = [&]() {
        const std::size_t start = i;
        while (i < doc.size() && is_name_char(doc[i])) ++i;
        return std::string(doc.substr(start, i - start));
    };
    auto skip_ws = [&]() {
        while (i < doc.size() && std::isspace(static_cast<unsigned char>(doc[i]))) ++i;
    };

    while (i < doc.size()) {
        if (doc[i] != '<') {
            if (stack.empty() && !std::isspace(static_cast<unsigned char>(doc[i]))) return fail("text outside root");
            if (doc[i] == '&' && doc.substr(i, 5) != "&amp;" && doc.substr(i, 4) != "&lt;" &&
                doc.substr(i, 4) != "&gt;" && doc.substr(i, 6) != "&quot;") {
                return fail("bare ampersand");
            }
            ++i;
            continue;
        }
        if (doc.substr(i, 5) == "<?xml") {
            if (i != 0) return fail("misplaced prolog");
            const auto end = doc.find("?>", i);
            if (end == std::string_view::npos) return fail("unterminated prolog");
            i = end + 2;
            continue;
        }
        if (doc.substr(i, 4) == "<!--") {
            const auto end = doc.find("-->", i);
            if (end == std::string_view::npos) return fail("unterminated comment");
            i = end + 3;
            continue;
        }
        if (doc.substr(i, 2) == "</") {
            i += 2;
            const std::string name = read_name();
            skip_ws();
            if (i >= doc.size() || doc[i] != '>') return fail("malformed end tag");
            ++i;
            if (stack.empty() || stack.back() != name) return fail("mismatched end tag </" + name + ">");
            stack.pop_back();
            if (stack.empty()) root_closed = true;
            continue;
        }
        ++i;
        const std::string name = read_name();
        if (name.empty()) return fail("empty element name");
        if (root_closed) return fail("second root element");
        if (stack.empty() && rep.root.empty()) rep.root = name;
        ++rep.element_counts[name];
        std::map<std::string, bool> attrs;
        while (true) {
            const std::size_t before = i;
            skip_ws();
            if (i >= doc.size()) return fail("unterminated start tag");
            if (doc[i] == '>') {
                ++i;
                stack.push_back(name);
                break;
            }
            if (doc.substr(i, 2) == "/>") {
                i += 2;
                if (stack.empty()) root_closed = true;
                break;
            }
            if (i == before) return fail("attributes must be separated by whitespace");
            const std::string attr = read_name();
            if (attr.empty()) return fail("bad attribute name");
            if (attrs.count(attr)) return fail("duplicate attribute " + attr);
            attrs[attr] = true;
            skip_ws();
            if (i >= doc.size() || doc[i] != '=') return fail("attribute without value");
            ++i;
            skip_ws();
            if (i >= doc.size() || (doc[i] != '"' && doc[i] != '\'')) return fail("unquoted attribute");
            const char quote = doc[i++];
            const auto end = doc.find(quote, i);
            if (end == std::string_view::npos) return fail("unterminated attribute value");
            if (doc.substr(i, end - i).find('<') != std::string_view::npos) return fail("'<' in attribute");
            i = end + 1;
        }
    }
    if (!stack.empty()) return fail("unclosed element <" + stack.back() + ">");
    if (rep.root.empty()) return fail("no root element");
    rep.well_formed = true;
    return rep;
}

}  // namespace xmlcheck
