/** Incremental NDJSON reader over a fetch response body.
 *
 * Records are yielded as soon as their line is complete, so a consumer can
 * render while the server is still producing.  A trailing line without a
 * newline (connection closed mid-flush) is still parsed.
 */
export async function* ndjsonRecords<T>(
  body: ReadableStream<Uint8Array>,
): AsyncGenerator<T, void, void> {
  const reader = body.getReader();
  const decoder = new TextDecoder();
  let buffer = "";
  try {
    for (;;) {
      const { done, value } = await reader.read();
      if (done) {
        break;
      }
      buffer += decoder.decode(value, { stream: true });
      let newline = buffer.indexOf("\n");
      while (newline >= 0) {
        const line = buffer.slice(0, newline).trim();
        buffer = buffer.slice(newline + 1);
        if (line.length > 0) {
          yield JSON.parse(line) as T;
        }
        newline = buffer.indexOf("\n");
      }
    }
    buffer += decoder.decode();
    const tail = buffer.trim();
    if (tail.length > 0) {
      yield JSON.parse(tail) as T;
    }
  } finally {
    reader.releaseLock();
  }
}
