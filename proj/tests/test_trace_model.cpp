/*
Copyright 2026 The tracesumm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tracesumm/csv_log.hpp"
#include "tracesumm/jsonl.hpp"
#include "tracesumm/synthetic.hpp"
#include "tracesumm/trace_model.hpp"
#include "tracesumm/xes_log.hpp"

namespace ts = tracesumm;

namespace {

ts::TraceSet csv(const std::string& text, const ts::CsvConfig& config = {}) {
    std::istringstream in(text);
    return ts::parse_csv_log(in, config);
}

ts::TraceSet xes(const std::string& text, const ts::XesConfig& config = {}) {
    std::istringstream in(text);
    return ts::parse_xes_log(in, config);
}

std::vector<std::string> labels_of(const ts::TraceSet& t, std::size_t attr, std::size_t trace) {
    std::vector<std::string> out;
    for (const auto& e : t.traces[trace].events) {
        out.push_back(t.schema.dictionary(attr).label(e.values[attr]));
    }
    return out;
}

} // namespace

TEST(CsvLog, GroupsRowsByTraceAndBuildsDictionaryInFirstSeenOrder) {
    const auto t = csv("trace_id,position,act\nt1,1,a\nt1,2,b\nt2,1,a\n");
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.traces[0].id, "t1");
    EXPECT_EQ(t.traces[1].id, "t2");
    const auto& dict = t.schema.dictionary(0);
    EXPECT_EQ(dict.cardinality(), 2u);
    EXPECT_EQ(*dict.find("a"), 0u);
    EXPECT_EQ(*dict.find("b"), 1u);
    EXPECT_FALSE(dict.missing_code().has_value());
    EXPECT_EQ(t.traces[0].size(), 2u);
    EXPECT_EQ(t.traces[1].size(), 1u);
}

TEST(CsvLog, ReordersEventsByPosition) {
    const auto t = csv("trace_id,position,act\nt1,2,second\nt1,1,first\n");
    EXPECT_EQ(labels_of(t, 0, 0), (std::vector<std::string>{"first", "second"}));
}

TEST(CsvLog, EqualPositionsKeepFileOrder) {
    const auto t = csv("trace_id,position,act\nt1,5,x\nt1,5,y\nt1,1,z\nt1,5,w\n");
    EXPECT_EQ(labels_of(t, 0, 0), (std::vector<std::string>{"z", "x", "y", "w"}));
}

TEST(CsvLog, TimestampOrdering) {
    const auto t = csv("case,time,act\nc,2024-03-01T10:00:00,late\nc,2024-02-28T09:00:00,early\n",
                       {"case", "time", {}});
    EXPECT_EQ(labels_of(t, 0, 0), (std::vector<std::string>{"early", "late"}));
}

TEST(CsvLog, HeaderOnlyIsEmptyInput) {
    EXPECT_THROW(csv("trace_id,position,act\n"), ts::EmptyInputError);
    EXPECT_THROW(csv(""), ts::EmptyInputError);
}

TEST(CsvLog, MissingColumnNamesTheColumn) {
    try {
        csv("id,position,act\nt,1,a\n");
        FAIL() << "expected SchemaError";
    } catch (const ts::SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("trace_id"), std::string::npos);
        EXPECT_EQ(e.module(), "trace-model");
    }
}

TEST(CsvLog, UnparsableOrderReportsLine) {
    try {
        csv("trace_id,position,act\nt,1,a\nt,two,b\n");
        FAIL() << "expected ParseError";
    } catch (const ts::ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(CsvLog, QuotedFieldsCrlfAndBom) {
    const auto t = csv("\xEF\xBB\xBFtrace_id,position,act\r\n\"t,1\",1,\"say \"\"hi\"\"\"\r\n\"t,1\",2,\"multi\nline\"\r\n");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.traces[0].id, "t,1");
    EXPECT_EQ(labels_of(t, 0, 0), (std::vector<std::string>{"say \"hi\"", "multi\nline"}));
}

TEST(CsvLog, EmptyCellBecomesReservedMissingCode) {
    const auto t = csv("trace_id,position,act,res\nt,1,a,\nt,2,b,r\n");
    const auto& res = t.schema.dictionary(1);
    ASSERT_TRUE(res.missing_code().has_value());
    EXPECT_EQ(*res.missing_code(), 1u); // appended after observed values
    EXPECT_EQ(t.traces[0].events[0].values[1], *res.missing_code());
}

TEST(CsvLog, SelectedAttributeColumns) {
    ts::CsvConfig config;
    config.attribute_columns = {"sec"};
    const auto t = csv("trace_id,position,act,sec\nt,1,a,X\n", config);
    ASSERT_EQ(t.schema.size(), 1u);
    EXPECT_EQ(t.schema.name(0), "sec");
}

TEST(CsvLog, RoundTripThroughWriter) {
    ts::SyntheticSpec spec;
    spec.traces = 40;
    spec.seed = 9;
    const auto original = ts::generate_synthetic_log(spec).log;
    std::stringstream buffer;
    ts::write_csv_log(buffer, original);
    const auto reparsed = ts::parse_csv_log(buffer);
    ASSERT_EQ(reparsed.size(), original.size());
    for (std::size_t t = 0; t < original.size(); ++t) {
        ASSERT_EQ(reparsed.traces[t].id, original.traces[t].id);
        ASSERT_EQ(reparsed.traces[t].size(), original.traces[t].size());
        for (std::size_t a = 0; a < original.schema.size(); ++a) {
            EXPECT_EQ(labels_of(reparsed, a, t), labels_of(original, a, t));
        }
    }
}

TEST(CsvLog, ParsingIsDeterministic) {
    const std::string text = "trace_id,position,act\nb,1,y\na,1,x\nb,2,x\n";
    EXPECT_EQ(csv(text), csv(text));
}

const char* const kXesTwoEvents = R"(<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1.0">
  <trace>
    <string key="concept:name" value="case-1"/>
    <event><string key="concept:name" value="A"/></event>
    <event><string key="concept:name" value="B"/><date key="time:timestamp" value="2020-01-01T00:00:00"/></event>
  </trace>
</log>)";

TEST(XesLog, OneTraceTwoEvents) {
    const auto t = xes(kXesTwoEvents);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.traces[0].id, "case-1");
    ASSERT_EQ(t.traces[0].size(), 2u);
    const auto& dict = t.schema.dictionary(0);
    EXPECT_EQ(*dict.find("A"), 0u);
    EXPECT_EQ(*dict.find("B"), 1u);
    ASSERT_TRUE(dict.missing_code().has_value());
    EXPECT_EQ(*dict.missing_code(), 2u);
}

TEST(XesLog, EventWithoutKeyIsMissing) {
    const auto t = xes(R"(<log><trace><event><string key="concept:name" value="A"/></event>
        <event><string key="org:resource" value="bob"/></event></trace></log>)");
    const auto& dict = t.schema.dictionary(0);
    EXPECT_EQ(t.traces[0].events[1].values[0], *dict.missing_code());
    EXPECT_TRUE(dict.is_missing(t.traces[0].events[1].values[0]));
}

TEST(XesLog, TracesShareDictionaryCodes) {
    const auto t = xes(R"(<log>
        <trace><event><string key="concept:name" value="X"/></event><event><string key="concept:name" value="Y"/></event></trace>
        <trace><event><string key="concept:name" value="Y"/></event><event><string key="concept:name" value="X"/></event></trace>
    </log>)");
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.traces[0].events[0].values[0], t.traces[1].events[1].values[0]);
    EXPECT_EQ(t.traces[0].events[1].values[0], t.traces[1].events[0].values[0]);
    EXPECT_EQ(t.traces[0].id, "trace_1");
    EXPECT_EQ(t.traces[1].id, "trace_2");
}

TEST(XesLog, MultipleKeys) {
    ts::XesConfig config;
    config.event_keys = {"concept:name", "org:resource"};
    const auto t = xes(R"(<log><trace><event><string key="org:resource" value="ann"/>
        <string key="concept:name" value="A"/></event></trace></log>)",
                       config);
    ASSERT_EQ(t.schema.size(), 2u);
    EXPECT_EQ(t.schema.dictionary(1).label(t.traces[0].events[0].values[1]), "ann");
}

TEST(XesLog, MalformedXmlReportsByteOffset) {
    try {
        xes("<log><trace><event></trace></log>");
        FAIL() << "expected ParseError";
    } catch (const ts::ParseError& e) {
        EXPECT_GT(e.byte_offset(), 0);
    }
}

TEST(XesLog, NoTracesIsEmptyInput) {
    EXPECT_THROW(xes("<log></log>"), ts::EmptyInputError);
}

TEST(Jsonl, RoundTrip) {
    ts::SyntheticSpec spec;
    spec.traces = 25;
    const auto original = ts::generate_synthetic_log(spec).log;
    std::stringstream buffer;
    ts::write_jsonl(buffer, original);
    EXPECT_EQ(ts::read_jsonl(buffer), original);
}

TEST(Jsonl, RoundTripKeepsMissingCode) {
    const auto original = csv("trace_id,position,act\nt,1,a\nt,2,\n");
    std::stringstream buffer;
    ts::write_jsonl(buffer, original);
    EXPECT_EQ(ts::read_jsonl(buffer), original);
}

TEST(Jsonl, BadLineReportsLineNumber) {
    std::istringstream in("{\"schema\":{\"attributes\":[{\"name\":\"a\",\"values\":[\"x\"]}]}}\n{oops\n");
    try {
        ts::read_jsonl(in);
        FAIL() << "expected ParseError";
    } catch (const ts::ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Jsonl, InvalidCodeFailsValidation) {
    std::istringstream in(
        "{\"schema\":{\"attributes\":[{\"name\":\"a\",\"values\":[\"x\"]}]}}\n{\"id\":\"t\",\"events\":[[3]]}\n");
    EXPECT_THROW(ts::read_jsonl(in), ts::ConsistencyError);
}

TEST(Schema, RejectsDuplicateAndEmptyNames) {
    ts::AttributeSchema schema;
    schema.add_attribute("act");
    EXPECT_THROW(schema.add_attribute("act"), ts::SchemaError);
    EXPECT_THROW(schema.add_attribute(""), ts::SchemaError);
    EXPECT_THROW(schema.index_of("nope"), ts::SchemaError);
}

TEST(TraceSet, LookupAndValidation) {
    auto t = csv("trace_id,position,act\nt1,1,a\nt2,1,b\n");
    EXPECT_EQ(t.index_of("t2"), 1u);
    EXPECT_THROW(t.index_of("t3"), ts::LookupError);
    t.traces[1].id = "t1";
    EXPECT_THROW(t.validate(), ts::ConsistencyError);
}

TEST(Projection, SingleAttribute) {
    const auto t = csv("trace_id,position,act,sec\nt,1,a,X\nt,2,b,X\n");
    const auto p = ts::project_symbols(t, {"sec"});
    ASSERT_EQ(p.sequences.size(), 1u);
    EXPECT_EQ(p.sequences[0], (ts::SymbolSequence{0, 0}));
    EXPECT_EQ(p.alphabet.size(), 1u);
}

TEST(Projection, TupleIdentity) {
    const auto t = csv("trace_id,position,act,sec\nt,1,a,X\nt,2,b,X\n");
    const auto p = ts::project_symbols(t, {"act", "sec"});
    EXPECT_EQ(p.sequences[0], (ts::SymbolSequence{0, 1}));
    EXPECT_EQ(p.alphabet.size(), 2u);
}

TEST(Projection, EmptyAndUnknownAttributesRejected) {
    const auto t = csv("trace_id,position,act\nt,1,a\n");
    EXPECT_THROW(ts::project_symbols(t, std::span<const std::string>{}), ts::SchemaError);
    EXPECT_THROW(ts::project_symbols(t, {"zzz"}), ts::SchemaError);
}

TEST(Projection, PreservesLengthOnEveryTrace) {
    ts::SyntheticSpec spec;
    spec.traces = 60;
    const auto log = ts::generate_synthetic_log(spec).log;
    for (const auto& attrs : std::vector<std::vector<std::string>>{{"activity"}, {"sector"}, {"sector", "responsible"}}) {
        const auto p = ts::project_symbols(log, attrs);
        for (std::size_t i = 0; i < log.size(); ++i) {
            EXPECT_EQ(p.sequences[i].size(), log.traces[i].size());
        }
    }
}

TEST(Corpus, FullSchemaComposites) {
    const auto t = csv("trace_id,position,act,sec\nt1,1,a,X\nt1,2,b,X\nt2,1,a,Y\n");
    const auto corpus = ts::make_corpus(t);
    EXPECT_EQ(corpus.alphabet_size, 3u);
    EXPECT_EQ(corpus.ids, (std::vector<std::string>{"t1", "t2"}));
    EXPECT_EQ(corpus.index_of("t2"), 1u);
    EXPECT_THROW(corpus.index_of("zz"), ts::LookupError);
}
