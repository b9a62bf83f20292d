// Field escaping for the tab-separated bundle files, matching the server:
// backslash, tab, newline, carriage return, and '#' (comment guard).

export function escapeField(value: string): string {
  let out = "";
  for (const ch of value) {
    switch (ch) {
      case "\\": out += "\\\\"; break;
      case "\t": out += "\\t"; break;
      case "\n": out += "\\n"; break;
      case "\r": out += "\\r"; break;
      case "#": out += "\\#"; break;
      default: out += ch;
    }
  }
  return out;
}

export function unescapeField(value: string): string {
  let out = "";
  let i = 0;
  while (i < value.length) {
    const ch = value[i]!;
    if (ch === "\\" && i + 1 < value.length) {
      const next = value[i + 1]!;
      const mapped = next === "\\" ? "\\"
        : next === "t" ? "\t"
        : next === "n" ? "\n"
        : next === "r" ? "\r"
        : next === "#" ? "#"
        : null;
      if (mapped !== null) {
        out += mapped;
        i += 2;
        continue;
      }
    }
    out += ch;
    i += 1;
  }
  return out;
}
