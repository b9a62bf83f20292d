// Highlight rendering, split into a pure segment computation (testable
// without a DOM) and a thin DOM layer in dom.ts.  Highlights are always
// derived from the last server response; nothing is recomputed client-side.

import type { Mention } from "./types.js";

export interface HighlightSegment {
  start: number;
  end: number;
  text: string;
  /** indexes into the kept-mention array covering this segment */
  mentions: number[];
  /** kept-mention indexes whose span ends exactly here (label anchors) */
  ending: number[];
}

export interface HighlightModel {
  segments: HighlightSegment[];
  /** mentions with offsets valid for the text, in response order */
  kept: Mention[];
  /** mentions dropped for out-of-range offsets */
  skipped: Mention[];
  /** concept -> mention count over kept mentions */
  legend: Map<string, number>;
}

export function buildHighlightModel(text: string, mentions: Mention[]): HighlightModel {
  const kept: Mention[] = [];
  const skipped: Mention[] = [];
  for (const mention of mentions) {
    if (
      Number.isInteger(mention.start) && Number.isInteger(mention.end)
      && mention.start >= 0 && mention.start < mention.end && mention.end <= text.length
    ) {
      kept.push(mention);
    } else {
      skipped.push(mention);
    }
  }

  const boundaries = new Set<number>([0, text.length]);
  for (const mention of kept) {
    boundaries.add(mention.start);
    boundaries.add(mention.end);
  }
  const cuts = [...boundaries].sort((a, b) => a - b);

  const segments: HighlightSegment[] = [];
  for (let i = 0; i + 1 < cuts.length; i++) {
    const start = cuts[i]!;
    const end = cuts[i + 1]!;
    const covering: number[] = [];
    const ending: number[] = [];
    kept.forEach((mention, index) => {
      if (mention.start <= start && end <= mention.end) {
        covering.push(index);
      }
      if (mention.end === end) {
        ending.push(index);
      }
    });
    segments.push({ start, end, text: text.slice(start, end), mentions: covering, ending });
  }
  if (text.length === 0) {
    segments.length = 0;
  }

  const legend = new Map<string, number>();
  for (const mention of kept) {
    legend.set(mention.concept, (legend.get(mention.concept) ?? 0) + 1);
  }
  return { segments, kept, skipped, legend };
}

/** Concatenated segment text covered by one kept mention; by construction it
 * equals the text slice, and the server guarantees that slice equals
 * matched_text. */
export function highlightedTextOf(model: HighlightModel, mentionIndex: number): string {
  return model.segments
    .filter((segment) => segment.mentions.includes(mentionIndex))
    .map((segment) => segment.text)
    .join("");
}
