/** Scripted fetch stub: routes requests, records served bodies. */

export interface Route {
  method: string;
  path: string;
  /** Single payload, or a queue consumed one response per call. */
  payload: unknown | unknown[];
  status?: number;
}

export class FakeServer {
  readonly served: string[] = [];
  readonly requests: { method: string; path: string; body: unknown }[] = [];
  private queues = new Map<string, unknown[]>();
  private statuses = new Map<string, number>();

  constructor(routes: Route[]) {
    for (const route of routes) {
      const key = `${route.method} ${route.path}`;
      const queue = Array.isArray(route.payload) ? [...route.payload] : [route.payload];
      this.queues.set(key, queue);
      this.statuses.set(key, route.status ?? 200);
    }
  }

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const key = `${method} ${input}`;
    const queue = this.queues.get(key);
    this.requests.push({
      method,
      path: input,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    if (!queue || queue.length === 0) {
      return new Response(JSON.stringify({ detail: `no route for ${key}` }), {
        status: 404,
        headers: { "Content-Type": "application/json" },
      });
    }
    const payload = queue.length > 1 ? queue.shift() : queue[0];
    const text = JSON.stringify(payload);
    this.served.push(text);
    return new Response(text, {
      status: this.statuses.get(key) ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  };

  /** Every numeric literal that appeared in any served response body. */
  servedNumbers(): Set<string> {
    const numbers = new Set<string>();
    for (const text of this.served) {
      for (const match of text.matchAll(/-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?/g)) {
        numbers.add(Number(match[0]).toString());
      }
    }
    return numbers;
  }
}
