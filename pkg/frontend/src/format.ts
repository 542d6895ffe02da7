/** Verbatim rendering of service numbers.
 *
 * The inspector must show exactly what the service computed, so values are
 * converted with String(): the shortest decimal that round-trips to the
 * same double. No rounding, no arithmetic, no locale formatting.
 */

export function verbatim(value: number): string {
  return String(value);
}

/** Compact form for dense table cells; detail views use verbatim. */
export function compact(value: number): string {
  if (Number.isInteger(value)) return String(value);
  return value.toPrecision(6);
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
