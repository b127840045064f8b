#include "oraclegen/java_source.hpp"

#include <cctype>
#include <sstream>
#include <tuple>

namespace oraclegen::java {

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

std::string strip_doc_comment(std::string_view comment) {
    if (comment.substr(0, 3) == "/**") {
        comment.remove_prefix(3);
    }
    if (comment.size() >= 2 && comment.substr(comment.size() - 2) == "*/") {
        comment.remove_suffix(2);
    }
    std::string out;
    std::size_t start = 0;
    bool first = true;
    while (start <= comment.size()) {
        std::size_t end = comment.find('\n', start);
        if (end == std::string_view::npos) {
            end = comment.size();
        }
        std::string_view line = comment.substr(start, end - start);
        std::size_t k = 0;
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) {
            ++k;
        }
        while (k < line.size() && line[k] == '*') {
            ++k;
        }
        if (k < line.size() && line[k] == ' ') {
            ++k;
        }
        line.remove_prefix(k);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.remove_suffix(1);
        }
        if (!first) {
            out.push_back('\n');
        }
        out.append(line);
        first = false;
        start = end + 1;
    }
    // Trim blank leading/trailing lines.
    const auto b = out.find_first_not_of("\n ");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = out.find_last_not_of("\n ");
    return out.substr(b, e - b + 1);
}

namespace {

std::pair<std::string, std::string> split_first_word(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    std::size_t k = 0;
    while (k < text.size() && !std::isspace(static_cast<unsigned char>(text[k]))) {
        ++k;
    }
    std::string word(text.substr(0, k));
    return {word, collapse_whitespace(text.substr(k))};
}

DocTag make_tag(std::string_view keyword, std::string_view body) {
    DocTag tag;
    tag.keyword = std::string(keyword);
    if (keyword == "param") {
        tag.kind = DocTagKind::Param;
        std::tie(tag.target, tag.text) = split_first_word(body);
    } else if (keyword == "throws" || keyword == "exception") {
        tag.kind = DocTagKind::Throws;
        std::tie(tag.target, tag.text) = split_first_word(body);
    } else {
        tag.kind = DocTagKind::Return;
        tag.text = collapse_whitespace(body);
    }
    return tag;
}

} // namespace

std::vector<DocTag> parse_doc_comment(std::string_view comment) {
    const std::string body = strip_doc_comment(comment);
    std::vector<DocTag> tags;
    std::string description;
    std::string keyword;
    std::string tag_body;
    bool in_tag = false;

    auto flush = [&] {
        if (in_tag && (keyword == "param" || keyword == "return" || keyword == "returns" ||
                       keyword == "throws" || keyword == "exception")) {
            tags.push_back(make_tag(keyword == "returns" ? "return" : keyword, tag_body));
        }
        tag_body.clear();
    };

    std::istringstream lines(body);
    std::string line;
    while (std::getline(lines, line)) {
        std::string_view view(line);
        while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) {
            view.remove_prefix(1);
        }
        if (!view.empty() && view.front() == '@') {
            flush();
            std::size_t k = 1;
            while (k < view.size() && std::isalpha(static_cast<unsigned char>(view[k]))) {
                ++k;
            }
            keyword = std::string(view.substr(1, k - 1));
            tag_body = std::string(view.substr(k));
            in_tag = true;
            continue;
        }
        std::string& target = in_tag ? tag_body : description;
        target.push_back('\n');
        target.append(view);
    }
    flush();

    std::string free_text = collapse_whitespace(description);
    if (!free_text.empty()) {
        DocTag tag;
        tag.kind = DocTagKind::FreeText;
        tag.text = std::move(free_text);
        tags.insert(tags.begin(), std::move(tag));
    }
    return tags;
}

} // namespace oraclegen::java
