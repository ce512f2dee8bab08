/** Browser bootstrap: mount the app against the service base URL.
 *
 * The base URL defaults to the page origin and can be overridden with
 * ?api=http://host:port for development against a separate backend.
 */

import { ApiClient } from "./api.js";
import { App } from "./app.js";

function baseUrl(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? window.location.origin;
}

window.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app mount point");
  const app = new App(new ApiClient(baseUrl()), root);
  void app.init().then(() => app.startPolling());
  // drive the layout animation
  const animate = () => {
    app.networkView?.tick(1);
    window.requestAnimationFrame(animate);
  };
  window.requestAnimationFrame(animate);
});
