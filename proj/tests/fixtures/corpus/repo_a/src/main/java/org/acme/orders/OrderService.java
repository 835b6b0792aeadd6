package org.acme.orders;

import java.util.ArrayList;
import java.util.List;
import org.apache.logging.log4j.LogManager;
import org.apache.logging.log4j.Logger;

public class OrderService {
    private static final Logger logger = LogManager.getLogger(OrderService.class);
    private final OrderRepository repository;
    private final List<String> audit = new ArrayList<>();

    public OrderService(OrderRepository repository) {
        this.repository = repository;
        logger.debug("order service created");
    }

    /** Places an order after validating it. */
    public Order place(Order order) {
        if (order == null) {
            logger.warn("refusing null order");
            return null;
        }
        try {
            repository.save(order);
            logger.info("placed order {} for {}", order.getId(), order.getCustomer());
        } catch (RepositoryException e) {
            logger.error("could not place order " + order.getId(), e);
            throw new IllegalStateException(e);
        }
        return order;
    }

    public void cancel(String id) {
        Order order = repository.find(id);
        if (logger.isDebugEnabled()) {
            logger.debug("cancelling {}", id);
        }
        order.setStatus(Status.CANCELLED);
        repository.save(order);
        audit.add("cancel:" + id);
    }

    public int countOpen() {
        int open = 0;
        for (Order o : repository.all()) {
            if (o.getStatus() == Status.OPEN) {
                open++;
            }
        }
        return open;
    }

    public List<Order> byCustomer(String customer) {
        List<Order> result = new ArrayList<>();
        for (Order o : repository.all()) {
            if (customer.equals(o.getCustomer())) {
                result.add(o);
            }
        }
        logger.trace("found {} orders for {}", result.size(), customer);
        return result;
    }

    @Override
    public String toString() {
        return "OrderService[" + repository + "]";
    }

    public void purge(int days) {
        logger.info("purging orders older than {} days", days);
        int removed = repository.purge(days);
        if (removed > 1000) {
            logger.fatal("purge removed {} orders", removed);
        }
        logger.info("purge done");
    }
}
