#!/usr/bin/env python3
"""Generates java_methods.jsonl: varied Java methods for round-trip tests.

Every snippet is checked with javalang (wrapped in a class when it is a bare
method). Run from this directory: python3 gen_java_fixture.py
"""

import json
import random

import javalang

WORDS = [
    "count", "total", "index", "value", "item", "node", "buffer", "line",
    "result", "temp", "data", "size", "limit", "offset", "key", "entry",
    "name", "path", "file", "reader", "writer", "token", "score", "weight",
    "left", "right", "head", "tail", "cursor", "delta", "step", "flag",
    "source", "target", "input", "output", "record", "field", "queue", "stack",
]

TEMPLATES = []


def template(fn):
    TEMPLATES.append(fn)
    return fn


class Names:
    def __init__(self, rng):
        self.rng = rng
        self.used = set()

    def __call__(self, prefix=""):
        while True:
            a = self.rng.choice(WORDS)
            if self.rng.random() < 0.5:
                b = self.rng.choice(WORDS)
                a = a + b[0].upper() + b[1:]
            if prefix:
                a = prefix + a[0].upper() + a[1:]
            if a not in self.used:
                self.used.add(a)
                return a


@template
def sum_array(n, r):
    m, arr, acc, i = n("sum"), n(), n(), n()
    return f"""public static int {m}(int[] {arr}) {{
    int {acc} = 0;
    for (int {i} = 0; {i} < {arr}.length; {i}++) {{
        {acc} += {arr}[{i}];
    }}
    return {acc};
}}"""


@template
def filter_list(n, r):
    m, xs, out, x, lim = n("filter"), n(), n(), n(), n()
    return f"""public List<Integer> {m}(List<Integer> {xs}, int {lim}) {{
    List<Integer> {out} = new ArrayList<>();
    for (Integer {x} : {xs}) {{
        if ({x} == null) {{
            continue;
        }}
        if ({x} > {lim}) {out}.add({x});
    }}
    return {out};
}}"""


@template
def linear_search(n, r):
    m, arr, k, i, found = n("find"), n(), n(), n(), n()
    return f"""static int {m}(String[] {arr}, String {k}) {{
    int {i} = 0;
    int {found} = -1;
    while ({i} < {arr}.length) {{
        if ({arr}[{i}].equals({k})) {{
            {found} = {i};
            break;
        }}
        {i}++;
    }}
    return {found};
}}"""


@template
def do_while(n, r):
    m, x, steps = n("collatz"), n(), n()
    return f"""public int {m}(long {x}) {{
    int {steps} = 0;
    do {{
        {x} = ({x} % 2 == 0) ? {x} / 2 : 3 * {x} + 1;
        {steps}++;
    }} while ({x} != 1L);
    return {steps};
}}"""


@template
def try_catch(n, r):
    m, p, s, e = n("read"), n(), n(), n()
    return f"""public String {m}(String {p}) {{
    String {s} = null;
    try {{
        {s} = new String(Files.readAllBytes(Paths.get({p})), "UTF-8");
    }} catch (IOException {e}) {{
        {e}.printStackTrace();
        return "";
    }} finally {{
        System.out.println("done: " + {p});
    }}
    return {s};
}}"""


@template
def try_resources(n, r):
    m, p, br, ln, c = n("countLines"), n(), n(), n(), n()
    return f"""public static int {m}(String {p}) throws IOException {{
    int {c} = 0;
    try (BufferedReader {br} = new BufferedReader(new FileReader({p}))) {{
        String {ln};
        while (({ln} = {br}.readLine()) != null) {{
            if (!{ln}.trim().isEmpty()) {c}++;
        }}
    }}
    return {c};
}}"""


@template
def switch_stmt(n, r):
    m, code, label = n("describe"), n(), n()
    return f"""String {m}(int {code}) {{
    String {label};
    switch ({code}) {{
        case 1:
            {label} = "one";
            break;
        case 2:
        case 3:
            {label} = "few";
            break;
        default:
            {label} = "many";
    }}
    return {label};
}}"""


@template
def char_switch(n, r):
    m, s, i, c, out = n("escape"), n(), n(), n(), n()
    return f"""public static String {m}(String {s}) {{
    StringBuilder {out} = new StringBuilder();
    for (int {i} = 0; {i} < {s}.length(); ++{i}) {{
        char {c} = {s}.charAt({i});
        switch ({c}) {{
            case '\\n': {out}.append("\\\\n"); break;
            case '\\t': {out}.append("\\\\t"); break;
            case '"': {out}.append("\\\\\\""); break;
            default: {out}.append({c});
        }}
    }}
    return {out}.toString();
}}"""


@template
def ternary_chain(n, r):
    m, a, b, d = n("compare"), n(), n(), n()
    return f"""private int {m}(double {a}, double {b}) {{
    double {d} = {a} - {b};
    if (Math.abs({d}) < 1e-9) {{
        return 0;
    }} else if ({d} > 0) {{
        return 1;
    }} else {{
        return {a} < 0 && {b} < 0 ? -2 : -1;
    }}
}}"""


@template
def generic_map(n, r):
    m, xs, groups, x, k = n("group"), n(), n(), n(), n()
    return f"""public static <T> Map<String, List<T>> {m}(List<T> {xs}) {{
    Map<String, List<T>> {groups} = new HashMap<String, List<T>>();
    for (T {x} : {xs}) {{
        String {k} = String.valueOf({x}).substring(0, 1);
        if (!{groups}.containsKey({k})) {{
            {groups}.put({k}, new ArrayList<T>());
        }}
        {groups}.get({k}).add({x});
    }}
    return {groups};
}}"""


@template
def bounded_generic(n, r):
    m, xs, best, x = n("max"), n(), n(), n()
    return f"""public static <T extends Comparable<? super T>> T {m}(Collection<? extends T> {xs}) {{
    T {best} = null;
    for (T {x} : {xs}) {{
        if ({best} == null || {x}.compareTo({best}) > 0) {{
            {best} = {x};
        }}
    }}
    return {best};
}}"""


@template
def lambdas(n, r):
    m, words, minLen = n("longWords"), n(), n()
    w = n()
    return f"""public List<String> {m}(List<String> {words}, final int {minLen}) {{
    return {words}.stream()
        .filter({w} -> {w}.length() >= {minLen})
        .map(String::toLowerCase)
        .sorted((a, b) -> b.compareTo(a))
        .collect(Collectors.toList());
}}"""


@template
def anonymous(n, r):
    m, items, counter = n("sortByLength"), n(), n()
    return f"""public void {m}(List<String> {items}) {{
    final int[] {counter} = new int[1];
    Collections.sort({items}, new Comparator<String>() {{
        @Override
        public int compare(String o1, String o2) {{
            {counter}[0]++;
            return Integer.compare(o1.length(), o2.length());
        }}
    }});
    System.out.println({counter}[0]);
}}"""


@template
def validation(n, r):
    m, idx, len_, arr = n("checkIndex"), n(), n(), n()
    return f"""static void {m}(int {idx}, Object[] {arr}) {{
    int {len_} = {arr} == null ? 0 : {arr}.length;
    if ({idx} < 0 || {idx} >= {len_}) {{
        throw new IndexOutOfBoundsException("index " + {idx} + " out of " + {len_});
    }}
    if ({arr}[{idx}] == null) throw new IllegalStateException();
}}"""


@template
def string_builder(n, r):
    m, s, sb, i = n("reverse"), n(), n(), n()
    return f"""public String {m}(String {s}) {{
    StringBuilder {sb} = new StringBuilder({s}.length());
    for (int {i} = {s}.length() - 1; {i} >= 0; {i}--) {{
        {sb}.append({s}.charAt({i}));
    }}
    return {sb}.toString();
}}"""


@template
def labeled(n, r):
    m, grid, t, i, j, hit = n("contains"), n(), n(), n(), n(), n()
    return f"""boolean {m}(int[][] {grid}, int {t}) {{
    boolean {hit} = false;
    outer:
    for (int {i} = 0; {i} < {grid}.length; {i}++) {{
        for (int {j} = 0; {j} < {grid}[{i}].length; {j}++) {{
            if ({grid}[{i}][{j}] == {t}) {{
                {hit} = true;
                break outer;
            }}
        }}
    }}
    return {hit};
}}"""


@template
def recursion(n, r):
    m, k = n("fib"), n()
    return f"""public static long {m}(int {k}) {{
    if ({k} < 2) {{
        return {k};
    }}
    return {m}({k} - 1) + {m}({k} - 2);
}}"""


@template
def bits(n, r):
    m, x, c = n("popcount"), n(), n()
    return f"""static int {m}(long {x}) {{
    int {c} = 0;
    while ({x} != 0) {{
        {x} &= {x} - 1;
        {c}++;
    }}
    {c} <<= 1;
    {c} >>= 1;
    return {c} ^ 0x0 | (int) ({x} >>> 63);
}}"""


@template
def matrix(n, r):
    m, a, b, c, i, j, k = n("multiply"), n(), n(), n(), n(), n(), n()
    return f"""public double[][] {m}(double[][] {a}, double[][] {b}) {{
    double[][] {c} = new double[{a}.length][{b}[0].length];
    for (int {i} = 0; {i} < {a}.length; {i}++)
        for (int {j} = 0; {j} < {b}[0].length; {j}++)
            for (int {k} = 0; {k} < {b}.length; {k}++)
                {c}[{i}][{j}] += {a}[{i}][{k}] * {b}[{k}][{j}];
    return {c};
}}"""


@template
def synchronized_block(n, r):
    m, v, old = n("update"), n(), n()
    return f"""public int {m}(int {v}) {{
    int {old};
    synchronized (this) {{
        {old} = this.state;
        this.state = {v};
        notifyAll();
    }}
    return {old};
}}"""


@template
def instanceof_cast(n, r):
    m, o, s = n("lengthOf"), n(), n()
    return f"""static int {m}(Object {o}) {{
    if ({o} instanceof String) {{
        String {s} = (String) {o};
        return {s}.length();
    }} else if ({o} instanceof Collection<?>) {{
        return ((Collection<?>) {o}).size();
    }}
    return -1;
}}"""


@template
def bool_flag(n, r):
    m, xs, done, i = n("allPositive"), n(), n(), n()
    return f"""public boolean {m}(int[] {xs}) {{
    boolean {done} = false;
    int {i} = 0;
    while (!{done} && {i} < {xs}.length) {{
        if ({xs}[{i}] <= 0) {{
            {done} = true;
        }}
        {i}++;
    }}
    return !{done};
}}"""


@template
def small_class(n, r):
    cls = n("holder")
    cls = cls[0].upper() + cls[1:]
    f, v, g = n(), n(), n("get")
    return f"""public class {cls} {{
    private final int {f};
    private static int instances = 0;

    public {cls}(int {v}) {{
        this.{f} = {v};
        instances++;
    }}

    public {cls}() {{
        this(0);
    }}

    public int {g}() {{
        return {f};
    }}
}}"""


@template
def varargs(n, r):
    m, parts, sep, out, p = n("join"), n(), n(), n(), n()
    return f"""public static String {m}(String {sep}, String... {parts}) {{
    String {out} = "";
    for (String {p} : {parts}) {{
        {out} += {out}.isEmpty() ? {p} : {sep} + {p};
    }}
    return {out};
}}"""


@template
def multi_catch(n, r):
    m, s, e = n("parse"), n(), n()
    return f"""public static Integer {m}(String {s}) {{
    try {{
        return Integer.valueOf({s}.trim());
    }} catch (NumberFormatException | NullPointerException {e}) {{
        return null;
    }}
}}"""


@template
def literals(n, r):
    m, a, b, c, d = n("constants"), n(), n(), n(), n()
    return f"""/**
 * Mixed literal forms.
 */
double {m}() {{
    long {a} = 0xFFL + 017 + 0b101; // hex, octal, binary
    float {b} = 1.5e3f;
    char {c} = '\\u0041';
    /* block comment */ double {d} = .5 + 1_000.0d;
    return {a} + {b} + {c} + {d};
}}"""


@template
def iterator_loop(n, r):
    m, xs, it, v = n("removeEmpty"), n(), n(), n()
    return f"""void {m}(List<String> {xs}) {{
    for (Iterator<String> {it} = {xs}.iterator(); {it}.hasNext();) {{
        String {v} = {it}.next();
        if ({v} == null || {v}.isEmpty()) {{
            {it}.remove();
        }}
    }}
}}"""


@template
def nested_generic_cast(n, r):
    m, o, map_ = n("unwrap"), n(), n()
    return f"""@SuppressWarnings("unchecked")
public Map<String, List<Integer>> {m}(Object {o}) {{
    Map<String, List<Integer>> {map_} = (Map<String, List<Integer>>) {o};
    return {map_} == null ? Collections.<String, List<Integer>>emptyMap() : {map_};
}}"""


@template
def array_init(n, r):
    m, primes, total, p = n("primeSum"), n(), n(), n()
    return f"""static int {m}() {{
    int[] {primes} = {{2, 3, 5, 7, 11, 13}};
    int {total} = 0;
    for (int {p} : {primes}) {total} += {p};
    assert {total} > 0 : "overflow";
    return {total};
}}"""


def wrap(code):
    if code.lstrip().startswith("public class") or code.lstrip().startswith("class"):
        return code
    return "class Wrapper {\n" + code + "\n}"


def main():
    rng = random.Random(20231)
    rows = []
    seen = set()
    per_template = 8
    for t in TEMPLATES:
        made = 0
        while made < per_template:
            code = t(Names(rng), rng)
            if code in seen:
                continue
            javalang.parse.parse(wrap(code))
            seen.add(code)
            rows.append({"id": f"{t.__name__}-{made}", "code": code})
            made += 1
    with open("java_methods.jsonl", "w") as out:
        for row in rows:
            out.write(json.dumps(row) + "\n")
    print(f"{len(rows)} snippets from {len(TEMPLATES)} templates")


if __name__ == "__main__":
    main()
