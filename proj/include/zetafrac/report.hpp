#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "zetafrac/errors.hpp"
#include "zetafrac/format.hpp"

namespace zetafrac {

// Minimal streaming JSON writer.  Compact output, RFC 8259 escaping,
// numbers through format_double so reports are locale-independent and
// round-trip exactly.  Non-finite doubles become null.
class JsonWriter {
public:
    void begin_object() {
        sep();
        buf_ += '{';
        first_.push_back(true);
    }

    void end_object() {
        first_.pop_back();
        buf_ += '}';
    }

    void begin_array() {
        sep();
        buf_ += '[';
        first_.push_back(true);
    }

    void end_array() {
        first_.pop_back();
        buf_ += ']';
    }

    void key(std::string_view k) {
        if (!first_.back()) buf_ += ',';
        first_.back() = false;
        write_string(k);
        buf_ += ':';
        pending_ = true;
    }

    void value(std::string_view s) {
        sep();
        write_string(s);
    }

    // const char* would otherwise convert to bool.
    void value(const char* s) { value(std::string_view(s)); }

    void value(double v) {
        sep();
        if (!std::isfinite(v)) {
            buf_ += "null";
            return;
        }
        buf_ += format_double(v);
    }

    void value(long long v) {
        sep();
        buf_ += std::to_string(v);
    }

    void value(int v) { value(static_cast<long long>(v)); }

    void value(bool b) {
        sep();
        buf_ += b ? "true" : "false";
    }

    void null() {
        sep();
        buf_ += "null";
    }

    template <class V>
    void kv(std::string_view k, V v) {
        key(k);
        value(v);
    }

    void kv_null(std::string_view k) {
        key(k);
        null();
    }

    const std::string& str() const { return buf_; }

private:
    std::string buf_;
    std::vector<bool> first_;
    bool pending_ = false;  // a key was just written; the next value attaches to it

    void sep() {
        if (pending_) {
            pending_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) buf_ += ',';
            first_.back() = false;
        }
    }

    void write_string(std::string_view s) {
        buf_ += '"';
        for (unsigned char c : s) {
            switch (c) {
                case '"': buf_ += "\\\""; break;
                case '\\': buf_ += "\\\\"; break;
                case '\n': buf_ += "\\n"; break;
                case '\r': buf_ += "\\r"; break;
                case '\t': buf_ += "\\t"; break;
                default:
                    if (c < 0x20) {
                        char t[8];
                        std::snprintf(t, sizeof t, "\\u%04x", c);
                        buf_ += t;
                    } else {
                        buf_ += static_cast<char>(c);
                    }
            }
        }
        buf_ += '"';
    }
};

// Write-to-temp then rename, so readers never observe a half-written
// report and a failed run leaves any previous file intact.
inline void write_file_atomic(const std::string& path, std::string_view content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail_data("cannot open for writing: " + tmp);
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) fail_data("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail_data("cannot move report into place: " + path);
}

}
